#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegelmate/blaschke.hpp"
#include "siegelmate/circle_map.hpp"

namespace siegelmate {

// Closed-form operations shared by the cubic Blaschke families.
struct CubicModelOps {
    std::function<cplx(cplx)> eval;
    std::function<cplx(cplx)> deriv;
    // Coefficients of the cubic whose roots are the preimages of w.
    std::function<std::array<cplx, 4>(cplx)> preimage_cubic;
};

CubicModelOps ops_of(const PetersenModel& m);
CubicModelOps ops_of(const BlaschkeCubic& m);

// All preimages of w, Newton-polished on the map itself.
std::vector<cplx> preimages(const CubicModelOps& ops, cplx w);

// Multi-index address of a drop. The unit disk is the (empty) root address.
struct DropAddress {
    std::vector<int> indices;

    int depth() const;       // sum of indices
    int generation() const { return int(indices.size()); }
    bool is_disk() const { return indices.empty(); }
    DropAddress parent() const;  // drop the last index
    // Address of the forward image: decrement the first index, dropping it at 1.
    DropAddress shifted() const;
    std::string str() const;  // "2.1.3"
    auto operator<=>(const DropAddress&) const = default;
};

enum class DropSide { UnitDisk, Infinity };

struct DropNode {
    DropAddress address;
    cplx root;
    std::vector<cplx> boundary;  // closed polyline, boundary[0] == root
    double diameter = 0.0;       // of the boundary samples
    double limb_diameter = 0.0;  // of the node plus all stored descendants
    DropSide side = DropSide::UnitDisk;
};

struct DropTreeParams {
    int max_generation = 3;
    int max_depth = 8;
    int resolution = 512;       // generation-1 boundary samples
    int resolution_floor = 64;  // halved per generation down to this
    int max_refine = 16;        // branch-tracking subdivision cap
};

class DropTree {
  public:
    DropTree(CubicModelOps ops, CircleLift lift, DropTreeParams params);

    // Backward orbit of the critical point along the circle: x_1 = 1,
    // eval(x_{j+1}) = x_j with x_{j+1} on the unit circle.
    static std::vector<cplx> circle_backward_orbit(const CubicModelOps& ops,
                                                   const CircleLift& lift, int n,
                                                   std::vector<double>* angles = nullptr);

    // Root of the child with the given index: the preimage of the shifted
    // root that lies on the parent boundary.
    cplx child_root(const DropAddress& parent, int child_index) const;

    // Pull a boundary polyline back one inverse step, continuity-tracked,
    // starting from the known root (whose image is image_poly[0]).
    std::vector<cplx> pullback_boundary(const std::vector<cplx>& image_poly, cplx root,
                                        int target_resolution) const;

    // Breadth-first construction of all nodes with generation <= max_generation
    // and depth <= max_depth.
    void build();

    const std::map<DropAddress, DropNode>& nodes() const { return nodes_; }
    const DropNode& node(const DropAddress& a) const;
    const DropNode* find(const DropAddress& a) const;
    const DropTreeParams& params() const { return params_; }
    const std::vector<cplx>& circle_roots() const { return circle_roots_; }

    // Interior angle of the boundary at the root, in degrees.
    double root_angle_deg(const DropAddress& a) const;

    // depth -> max over nodes of that depth of the limb diameter estimate.
    std::map<int, double> limb_diameter_profile() const;

    struct ChainLanding {
        cplx estimate;
        double radius;
        DropAddress deepest;
    };
    // Landing estimate of a nested drop chain; each address must be a child of
    // the previous one and present in the tree.
    ChainLanding drop_chain_landing(const std::vector<DropAddress>& chain) const;

    // Reflect through the unit circle (z -> 1/conj(z)) and tag the other side;
    // applied to a unit-disk tree of the parameter-swapped model this yields
    // the infinity-side tree.
    DropTree mirrored() const;

  private:
    DropTree() = default;
    int resolution_for_generation(int gen) const;

    CubicModelOps ops_;
    std::optional<CircleLift> lift_;
    DropTreeParams params_;
    std::map<DropAddress, DropNode> nodes_;
    std::vector<cplx> circle_roots_;  // x_1..x_maxdepth
    DropSide side_ = DropSide::UnitDisk;
};

double polyline_diameter(const std::vector<cplx>& pts);
std::vector<cplx> convex_hull(std::vector<cplx> pts);
void compute_limb_diameters(std::map<DropAddress, DropNode>& nodes);

}  // namespace siegelmate
