#include "siegelmate/drops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siegelmate/errors.hpp"
#include "siegelmate/polyroots.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
cplx circle_point(double turns) { return cplx(std::cos(kTau * turns), std::sin(kTau * turns)); }
}  // namespace

CubicModelOps ops_of(const PetersenModel& m) {
    return {[m](cplx z) { return m.eval(z); }, [m](cplx z) { return m.deriv(z); },
            [m](cplx w) { return m.preimage_cubic(w); }};
}

CubicModelOps ops_of(const BlaschkeCubic& m) {
    return {[m](cplx z) { return m.eval(z); }, [m](cplx z) { return m.deriv(z); },
            [m](cplx w) { return m.preimage_cubic(w); }};
}

std::vector<cplx> preimages(const CubicModelOps& ops, cplx w) {
    auto coeffs = ops.preimage_cubic(w);
    auto roots = poly_roots({coeffs[0], coeffs[1], coeffs[2], coeffs[3]});
    for (auto& z : roots) {
        for (int i = 0; i < 3; ++i) {
            cplx d = ops.deriv(z);
            if (std::abs(d) < 1e-13) break;
            cplx step = (ops.eval(z) - w) / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
    }
    return roots;
}

int DropAddress::depth() const {
    int d = 0;
    for (int i : indices) d += i;
    return d;
}

DropAddress DropAddress::parent() const {
    if (indices.empty()) throw std::logic_error("the unit disk has no parent");
    return {std::vector<int>(indices.begin(), indices.end() - 1)};
}

DropAddress DropAddress::shifted() const {
    if (indices.empty()) throw std::logic_error("the unit disk has no forward image address");
    std::vector<int> out = indices;
    if (out.front() > 1) {
        out.front() -= 1;
    } else {
        out.erase(out.begin());
    }
    return {std::move(out)};
}

std::string DropAddress::str() const {
    if (indices.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(indices[i]);
    }
    return s;
}

DropTree::DropTree(CubicModelOps ops, CircleLift lift, DropTreeParams params)
    : ops_(std::move(ops)), lift_(std::move(lift)), params_(params) {}

std::vector<cplx> DropTree::circle_backward_orbit(const CubicModelOps& ops, const CircleLift& lift,
                                                  int n, std::vector<double>* angles) {
    std::vector<cplx> xs;
    std::vector<double> us;
    xs.reserve(n);
    us.reserve(n);
    double u = 0.0;  // x_1 = 1
    xs.push_back(cplx(1.0, 0.0));
    us.push_back(0.0);
    for (int j = 1; j < n; ++j) {
        // Solve F(x) = u_prev (mod 1) by monotone bisection of the lift.
        double F0 = lift(0.0);
        double y = us.back() + std::ceil(F0 - us.back());
        if (y < F0) y += 1.0;
        if (y >= F0 + 1.0) y -= 1.0;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 64; ++it) {
            double mid = 0.5 * (lo + hi);
            if (lift(mid) < y) lo = mid;
            else hi = mid;
        }
        u = 0.5 * (lo + hi);
        cplx z = circle_point(u);
        // Newton polish on the map, then project back to the circle.
        for (int it = 0; it < 2; ++it) {
            cplx d = ops.deriv(z);
            if (std::abs(d) < 1e-10) break;
            z -= (ops.eval(z) - xs.back()) / d;
        }
        z /= std::abs(z);
        if (std::abs(ops.eval(z) - xs.back()) > 1e-9)
            throw NumericError("circle backward orbit: no cubic-root preimage on the circle at step " +
                               std::to_string(j + 1));
        xs.push_back(z);
        us.push_back(u);
    }
    if (angles) *angles = us;
    return xs;
}

cplx DropTree::child_root(const DropAddress& parent, int child_index) const {
    if (child_index < 1) throw std::domain_error("child index must be >= 1");
    DropAddress child{parent.indices};
    child.indices.push_back(child_index);
    DropAddress image = child.shifted();

    cplx target;
    if (image.is_disk()) {
        // Only (1) shifts to the disk; its root is the critical point.
        target = cplx(1.0, 0.0);
        if (!(parent.is_disk() && child_index == 1))
            throw std::logic_error("unexpected shift to the unit disk");
        return target;
    }
    const DropNode* shift_node = find(image);
    cplx shift_root;
    if (shift_node) {
        shift_root = shift_node->root;
    } else if (image.generation() == 1) {
        shift_root = circle_roots_.at(std::size_t(image.depth()) - 1);
    } else {
        throw std::out_of_range("shifted node " + image.str() + " not constructed yet");
    }

    const std::vector<cplx>* boundary = nullptr;
    std::vector<cplx> circle;
    if (parent.is_disk()) {
        return circle_roots_.at(std::size_t(child_index) - 1);
    }
    const DropNode& pnode = node(parent);
    boundary = &pnode.boundary;

    auto cands = preimages(ops_, shift_root);
    auto dist_to_poly = [&](cplx z) {
        double best = 1e300;
        const auto& poly = *boundary;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            cplx a = poly[i];
            cplx b = poly[(i + 1) % poly.size()];
            cplx ab = b - a;
            double len2 = std::norm(ab);
            double s = len2 > 0.0 ? std::clamp((std::conj(ab) * (z - a)).real() / len2, 0.0, 1.0) : 0.0;
            best = std::min(best, std::abs(z - (a + s * ab)));
        }
        return best;
    };
    std::vector<std::pair<double, cplx>> scored;
    for (cplx z : cands) scored.push_back({dist_to_poly(z), z});
    std::sort(scored.begin(), scored.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    double scale = std::max(node(parent).diameter, 1e-12);
    if (scored.size() >= 2 && scored[1].first < 8.0 * std::max(scored[0].first, 1e-3 * scale))
        throw AmbiguityError("two preimage candidates lie near the boundary of " + parent.str() +
                             "; raise the boundary resolution");
    return scored[0].second;
}

std::vector<cplx> DropTree::pullback_boundary(const std::vector<cplx>& image_poly, cplx root,
                                              int target_resolution) const {
    const std::size_t R = std::size_t(target_resolution);
    const std::size_t M = image_poly.size();
    std::vector<cplx> out(R);
    out[0] = root;
    // At the critical root the three preimage branches coalesce; distance
    // cannot pick the branch for the first step. The unit-disk drops lie
    // outside the closed disk, so take the candidate of largest modulus there.
    const bool critical_root = std::abs(root - cplx(1.0, 0.0)) < 1e-9;

    // Nearest preimage with a branch-separation guard; subdivide the image
    // chord until the continuation is unambiguous.
    std::function<cplx(cplx, cplx, cplx, int)> track = [&](cplx zfrom, cplx wfrom, cplx wto,
                                                           int depth) -> cplx {
        auto cands = preimages(ops_, wto);
        std::size_t best = 0;
        double d0 = 1e300, d1 = 1e300;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            double d = std::abs(cands[i] - zfrom);
            if (d < d0) {
                d1 = d0;
                d0 = d;
                best = i;
            } else {
                d1 = std::min(d1, d);
            }
        }
        if (d1 > 3.0 * d0 || d0 < 1e-13) return cands[best];
        if (depth >= params_.max_refine)
            throw TrackingError("inverse-branch tracking lost the branch near w=" +
                                std::to_string(wto.real()) + "+" + std::to_string(wto.imag()) + "i");
        cplx wmid = 0.5 * (wfrom + wto);
        cplx zmid = track(zfrom, wfrom, wmid, depth + 1);
        return track(zmid, wmid, wto, depth + 1);
    };

    auto sample_image = [&](std::size_t i) {
        double pos = double(i) * double(M) / double(R);
        std::size_t i0 = std::size_t(pos) % M;
        double tfrac = pos - std::floor(pos);
        return image_poly[i0] * (1.0 - tfrac) + image_poly[(i0 + 1) % M] * tfrac;
    };

    if (critical_root) {
        cplx w1 = sample_image(1);
        auto cands = preimages(ops_, w1);
        out[1] = *std::max_element(cands.begin(), cands.end(),
                                   [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    }

    for (std::size_t i = critical_root ? 2 : 1; i < R; ++i) {
        out[i] = track(out[i - 1], sample_image(i - 1), sample_image(i), 0);
    }
    return out;
}

int DropTree::resolution_for_generation(int gen) const {
    int r = params_.resolution;
    for (int g = 1; g < gen; ++g) r /= 2;
    return std::max(r, params_.resolution_floor);
}

void DropTree::build() {
    nodes_.clear();
    std::vector<double> angles;
    circle_roots_ = circle_backward_orbit(ops_, *lift_, params_.max_depth, &angles);

    for (int d = 1; d <= params_.max_depth; ++d) {
        // Children of the disk at this depth: address (d).
        if (params_.max_generation >= 1) {
            DropAddress a{{d}};
            DropNode n;
            n.address = a;
            n.side = side_;
            n.root = circle_roots_[std::size_t(d) - 1];
            std::vector<cplx> image_poly;
            if (d == 1) {
                // Image boundary is the unit circle re-anchored at eval(1).
                int R = resolution_for_generation(1);
                cplx w0 = ops_.eval(cplx(1.0, 0.0));
                double t0 = std::atan2(w0.imag(), w0.real()) / kTau;
                image_poly.resize(std::size_t(R));
                for (int i = 0; i < R; ++i) image_poly[std::size_t(i)] = circle_point(t0 + double(i) / R);
            } else {
                image_poly = nodes_.at(DropAddress{{d - 1}}).boundary;
            }
            n.boundary = pullback_boundary(image_poly, n.root, resolution_for_generation(1));
            n.diameter = polyline_diameter(n.boundary);
            nodes_.emplace(a, std::move(n));
        }
        // Children of existing drops with root depth d.
        std::vector<std::pair<DropAddress, int>> todo;
        for (const auto& [pa, pn] : nodes_) {
            if (pa.generation() >= params_.max_generation) continue;
            int idx = d - pa.depth();
            if (idx >= 1) todo.push_back({pa, idx});
        }
        for (const auto& [pa, idx] : todo) {
            DropAddress a{pa.indices};
            a.indices.push_back(idx);
            DropNode n;
            n.address = a;
            n.side = side_;
            n.root = child_root(pa, idx);
            const DropNode& image = nodes_.at(a.shifted());
            n.boundary = pullback_boundary(image.boundary, n.root,
                                           resolution_for_generation(a.generation()));
            n.diameter = polyline_diameter(n.boundary);
            nodes_.emplace(a, std::move(n));
        }
    }

    compute_limb_diameters(nodes_);
}

void compute_limb_diameters(std::map<DropAddress, DropNode>& nodes) {
    // Hull of own boundary plus descendant hulls, deepest generation first.
    std::map<DropAddress, std::vector<const DropAddress*>> children;
    for (const auto& [a, n] : nodes)
        if (a.generation() > 1) children[a.parent()].push_back(&a);
    std::map<DropAddress, std::vector<cplx>> hulls;
    std::vector<DropNode*> order;
    for (auto& [a, n] : nodes) order.push_back(&n);
    std::sort(order.begin(), order.end(), [](const DropNode* x, const DropNode* y) {
        return x->address.generation() > y->address.generation();
    });
    for (DropNode* n : order) {
        std::vector<cplx> pts = n->boundary;
        auto it = children.find(n->address);
        if (it != children.end()) {
            for (const DropAddress* ca : it->second) {
                const auto& h = hulls.at(*ca);
                pts.insert(pts.end(), h.begin(), h.end());
            }
        }
        auto hull = convex_hull(std::move(pts));
        n->limb_diameter = polyline_diameter(hull);
        hulls.emplace(n->address, std::move(hull));
    }
}

const DropNode& DropTree::node(const DropAddress& a) const {
    auto it = nodes_.find(a);
    if (it == nodes_.end()) throw std::out_of_range("drop " + a.str() + " is not in the tree");
    return it->second;
}

const DropNode* DropTree::find(const DropAddress& a) const {
    auto it = nodes_.find(a);
    return it == nodes_.end() ? nullptr : &it->second;
}

double DropTree::root_angle_deg(const DropAddress& a) const {
    const DropNode& n = node(a);
    const auto& b = n.boundary;
    const std::size_t R = b.size();
    // Secant directions at two scales, Richardson-extrapolated toward the root.
    auto angle_at = [&](std::size_t off) {
        cplx d1 = b[off] - b[0];
        cplx d2 = b[R - off] - b[0];
        double c = (std::conj(d1) * d2).real() / (std::abs(d1) * std::abs(d2));
        return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    };
    double a2 = angle_at(2), a1 = angle_at(1);
    return 2.0 * a1 - a2;
}

std::map<int, double> DropTree::limb_diameter_profile() const {
    std::map<int, double> profile;
    for (const auto& [a, n] : nodes_) {
        auto& v = profile[a.depth()];
        v = std::max(v, n.limb_diameter);
    }
    return profile;
}

DropTree::ChainLanding DropTree::drop_chain_landing(const std::vector<DropAddress>& chain) const {
    if (chain.empty()) throw std::domain_error("empty drop chain");
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i].parent() != chain[i - 1])
            throw std::domain_error("chain addresses are not nested parent-to-child");
    const DropNode& deepest = node(chain.back());
    return {deepest.root, std::max(deepest.limb_diameter, deepest.diameter), deepest.address};
}

DropTree DropTree::mirrored() const {
    DropTree out;
    out.ops_ = ops_;
    out.params_ = params_;
    out.side_ = side_ == DropSide::UnitDisk ? DropSide::Infinity : DropSide::UnitDisk;
    out.circle_roots_ = circle_roots_;
    for (auto& z : out.circle_roots_) z = 1.0 / std::conj(z);
    for (const auto& [a, n] : nodes_) {
        DropNode m = n;
        m.side = out.side_;
        m.root = 1.0 / std::conj(m.root);
        for (auto& z : m.boundary) z = 1.0 / std::conj(z);
        m.diameter = polyline_diameter(m.boundary);
        // Limb diameters are recomputed from the mirrored points.
        out.nodes_.emplace(a, std::move(m));
    }
    compute_limb_diameters(out.nodes_);
    return out;
}

std::vector<cplx> convex_hull(std::vector<cplx> pts) {
    if (pts.size() < 3) return pts;
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](cplx o, cplx a, cplx b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<cplx> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

double polyline_diameter(const std::vector<cplx>& pts) {
    auto hull = convex_hull(pts);
    double best = 0.0;
    // Hulls here are small; the quadratic pass is fine.
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j)
            best = std::max(best, std::abs(hull[i] - hull[j]));
    return best;
}

}  // namespace siegelmate
