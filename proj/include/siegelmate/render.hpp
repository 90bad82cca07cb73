#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "siegelmate/blaschke.hpp"
#include "siegelmate/rational_maps.hpp"

namespace siegelmate {

// Validated forward-invariant disk around a Siegel fixed point, used as a
// computable stand-in for the Siegel disk in orbit classification. The disk
// lives in a chart where the fixed point sits at the origin.
struct TrapRegion {
    double radius = 0.0;
    bool validated = false;
    double max_drift = 0.0;  // max |w|/radius - 1 over validation probes
    int probes = 256;
    int iterations = 200;
};

// radius starts at eta * critical_distance and is halved until validation
// passes (probes on the rim stay within radius*(1+0.05) for 200 iterates) or
// radius < 1e-6, in which case validated stays false.
TrapRegion make_trap(const std::function<cplx(cplx)>& chart_map, double critical_distance,
                     double eta = 0.25);

enum class PointClass : std::uint8_t { SideA = 0, SideB = 1, Undecided = 2, Escaped = 3 };

struct ClassResult {
    PointClass cls;
    int steps;
};

// Orbit classification for the cubic Blaschke model: entering the open unit
// disk decides side A immediately; entering the validated trap at infinity
// decides side B; otherwise undecided after max_iter.
ClassResult classify_B(const BlaschkeCubic& model, const TrapRegion& trap_inf, cplx z, int max_iter);

// Same for the quadratic rational normal form with traps at 0 and infinity.
ClassResult classify_F(const QuadRational& F, const TrapRegion& trap0, const TrapRegion& trap_inf,
                       cplx z, int max_iter);

// Escape-time classification for z^2 + c. Bounded orbits report SideA.
ClassResult escape_classify_f(cplx c, cplx z, int max_iter, double R);

enum class RenderKind { FJulia, Petersen, Mating, FMating, Chebyshev };

struct Viewport {
    double re0, im0, re1, im1;
};

struct Overlay {
    std::vector<std::vector<cplx>> polylines;
    std::uint8_t rgb[3] = {220, 40, 40};
};

struct RenderConfig {
    RenderKind kind = RenderKind::Mating;
    Viewport viewport{-2.0, -2.0, 2.0, 2.0};
    int width = 512, height = 512;
    int max_iter = 2000;
    double escape_radius = 4.0;  // for the quadratic polynomial kind
    std::vector<Overlay> overlays;
};

Viewport default_viewport(RenderKind kind);

struct ImageGrid {
    int width = 0, height = 0;
    Viewport viewport{};
    std::vector<std::uint8_t> cls;    // PointClass per pixel, row-major from im1 down
    std::vector<std::uint16_t> iters;

    cplx pixel_center(int ix, int iy) const;
    // Fraction of pixels whose class differs.
    static double churn(const ImageGrid& a, const ImageGrid& b);
};

// Fixed palette: side A black, side B mid gray, undecided white, escaped light
// gray; overlays stroked on top.
ImageGrid render_fjulia(const SiegelQuadratic& f, const RenderConfig& cfg);
ImageGrid render_petersen(const PetersenModel& m, const RenderConfig& cfg);
ImageGrid render_mating(const BlaschkeCubic& m, const TrapRegion& trap_inf, const RenderConfig& cfg);
ImageGrid render_fmating(const QuadRational& F, const TrapRegion& t0, const TrapRegion& ti,
                         const RenderConfig& cfg);
ImageGrid render_chebyshev(const ChebyshevQuotient& G, const TrapRegion& trap1, const RenderConfig& cfg);

// Binary PPM (P6, maxval 255) with overlays composited as 1-pixel strokes.
std::string ppm_bytes(const ImageGrid& grid, const std::vector<Overlay>& overlays);

// Traps for the standard configurations.
TrapRegion trap_for_B_infinity(const BlaschkeCubic& m, double eta = 0.25);
TrapRegion trap_for_F(const QuadRational& F, bool at_infinity, double eta = 0.25);
TrapRegion trap_for_chebyshev(const ChebyshevQuotient& G, double eta = 0.25);

}  // namespace siegelmate
