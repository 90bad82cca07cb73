#include "siegelmate/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "siegelmate/errors.hpp"

namespace siegelmate {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kRimMargin = 1e-9;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void parallel_rows(int height, const std::function<void(int)>& row_fn) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || height < 8) {
        for (int y = 0; y < height; ++y) row_fn(y);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int y = next.fetch_add(1); y < height; y = next.fetch_add(1)) row_fn(y);
        });
    for (auto& t : pool) t.join();
}
}  // namespace

TrapRegion make_trap(const std::function<cplx(cplx)>& chart_map, double critical_distance,
                     double eta) {
    if (!(eta > 0.0)) throw std::domain_error("trap shrink factor must be positive");
    TrapRegion trap;
    trap.radius = eta * critical_distance;
    const double delta = 0.05;
    while (trap.radius >= 1e-6) {
        double worst = 0.0;
        bool ok = true;
        for (int p = 0; p < trap.probes && ok; ++p) {
            cplx w = trap.radius * cplx(std::cos(kTau * p / trap.probes),
                                        std::sin(kTau * p / trap.probes));
            for (int k = 0; k < trap.iterations; ++k) {
                w = chart_map(w);
                if (!finite(w) || std::abs(w) > trap.radius * (1.0 + delta)) {
                    ok = false;
                    break;
                }
            }
            if (ok) worst = std::max(worst, std::abs(w) / trap.radius - 1.0);
        }
        if (ok) {
            trap.validated = true;
            trap.max_drift = worst;
            return trap;
        }
        trap.radius *= 0.5;
    }
    trap.validated = false;
    return trap;
}

ClassResult classify_B(const BlaschkeCubic& model, const TrapRegion& trap_inf, cplx z, int max_iter) {
    double inf_cut = trap_inf.validated ? 1.0 / trap_inf.radius : 1e12;
    for (int k = 0; k <= max_iter; ++k) {
        double r = std::abs(z);
        if (r < 1.0 - kRimMargin) return {PointClass::SideA, k};
        if (!finite(z) || r > inf_cut) return {PointClass::SideB, k};
        z = model.eval(z);
    }
    return {PointClass::Undecided, max_iter};
}

ClassResult classify_F(const QuadRational& F, const TrapRegion& trap0, const TrapRegion& trap_inf,
                       cplx z, int max_iter) {
    double cut0 = trap0.validated ? trap0.radius : 0.0;
    double cut_inf = trap_inf.validated ? 1.0 / trap_inf.radius : 1e12;
    for (int k = 0; k <= max_iter; ++k) {
        double r = std::abs(z);
        if (r <= cut0) return {PointClass::SideA, k};
        if (!finite(z) || r >= cut_inf) return {PointClass::SideB, k};
        z = F.eval(z);
    }
    return {PointClass::Undecided, max_iter};
}

ClassResult escape_classify_f(cplx c, cplx z, int max_iter, double R) {
    if (R < 2.0 + std::abs(c)) throw std::domain_error("escape radius must be >= 2 + |c|");
    for (int k = 0; k <= max_iter; ++k) {
        if (!finite(z) || std::abs(z) > R) return {PointClass::Escaped, k};
        z = z * z + c;
    }
    return {PointClass::SideA, max_iter};
}

Viewport default_viewport(RenderKind kind) {
    switch (kind) {
        case RenderKind::FJulia: return {-1.8, -1.8, 1.8, 1.8};
        case RenderKind::Petersen: return {-3.2, -3.4, 4.4, 3.4};
        case RenderKind::Mating: return {-3.2, -3.4, 4.4, 3.4};
        case RenderKind::FMating: return {-3.0, -3.0, 3.0, 3.0};
        case RenderKind::Chebyshev: return {-2.5, -2.5, 2.5, 2.5};
    }
    return {-2.0, -2.0, 2.0, 2.0};
}

cplx ImageGrid::pixel_center(int ix, int iy) const {
    double re = viewport.re0 + (viewport.re1 - viewport.re0) * (ix + 0.5) / width;
    double im = viewport.im1 - (viewport.im1 - viewport.im0) * (iy + 0.5) / height;
    return {re, im};
}

double ImageGrid::churn(const ImageGrid& a, const ImageGrid& b) {
    if (a.cls.size() != b.cls.size()) throw std::invalid_argument("grid sizes differ");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.cls.size(); ++i) diff += a.cls[i] != b.cls[i];
    return double(diff) / double(a.cls.size());
}

namespace {

ImageGrid run_grid(const RenderConfig& cfg, const std::function<ClassResult(cplx)>& classify) {
    ImageGrid g;
    g.width = cfg.width;
    g.height = cfg.height;
    g.viewport = cfg.viewport;
    g.cls.assign(std::size_t(cfg.width) * cfg.height, std::uint8_t(PointClass::Undecided));
    g.iters.assign(std::size_t(cfg.width) * cfg.height, 0);
    parallel_rows(cfg.height, [&](int y) {
        for (int x = 0; x < cfg.width; ++x) {
            ClassResult r = classify(g.pixel_center(x, y));
            g.cls[std::size_t(y) * cfg.width + x] = std::uint8_t(r.cls);
            g.iters[std::size_t(y) * cfg.width + x] =
                std::uint16_t(std::min(r.steps, 65535));
        }
    });
    return g;
}

}  // namespace

ImageGrid render_fjulia(const SiegelQuadratic& f, const RenderConfig& cfg) {
    double R = std::max(cfg.escape_radius, 2.0 + std::abs(f.c));
    return run_grid(cfg, [&](cplx z) { return escape_classify_f(f.c, z, cfg.max_iter, R); });
}

ImageGrid render_petersen(const PetersenModel& m, const RenderConfig& cfg) {
    return run_grid(cfg, [&](cplx z) -> ClassResult {
        for (int k = 0; k <= cfg.max_iter; ++k) {
            double r = std::abs(z);
            if (r < 1.0 - kRimMargin) return {PointClass::SideA, k};
            if (!finite(z) || r > 1e6) return {PointClass::Escaped, k};
            z = m.eval(z);
        }
        return {PointClass::Undecided, cfg.max_iter};
    });
}

ImageGrid render_mating(const BlaschkeCubic& m, const TrapRegion& trap_inf, const RenderConfig& cfg) {
    return run_grid(cfg, [&](cplx z) { return classify_B(m, trap_inf, z, cfg.max_iter); });
}

ImageGrid render_fmating(const QuadRational& F, const TrapRegion& t0, const TrapRegion& ti,
                         const RenderConfig& cfg) {
    return run_grid(cfg, [&](cplx z) { return classify_F(F, t0, ti, z, cfg.max_iter); });
}

ImageGrid render_chebyshev(const ChebyshevQuotient& G, const TrapRegion& trap1, const RenderConfig& cfg) {
    double cut = trap1.validated ? trap1.radius : 0.0;
    return run_grid(cfg, [&](cplx z) -> ClassResult {
        for (int k = 0; k <= cfg.max_iter; ++k) {
            if (finite(z) && std::abs(z - 1.0) <= cut) return {PointClass::SideA, k};
            if (!finite(z)) return {PointClass::SideB, k};
            z = G.eval(z);
        }
        return {PointClass::Undecided, cfg.max_iter};
    });
}

std::string ppm_bytes(const ImageGrid& grid, const std::vector<Overlay>& overlays) {
    static constexpr std::uint8_t palette[4][3] = {
        {0, 0, 0},        // side A
        {128, 128, 128},  // side B
        {255, 255, 255},  // undecided
        {176, 176, 176},  // escaped
    };
    std::string out = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) +
                      "\n255\n";
    std::vector<std::uint8_t> buf(std::size_t(grid.width) * grid.height * 3);
    for (std::size_t i = 0; i < grid.cls.size(); ++i) {
        const std::uint8_t* rgb = palette[grid.cls[i] & 3];
        buf[3 * i] = rgb[0];
        buf[3 * i + 1] = rgb[1];
        buf[3 * i + 2] = rgb[2];
    }
    auto plot = [&](int x, int y, const std::uint8_t* rgb) {
        if (x < 0 || y < 0 || x >= grid.width || y >= grid.height) return;
        std::size_t i = std::size_t(y) * grid.width + x;
        buf[3 * i] = rgb[0];
        buf[3 * i + 1] = rgb[1];
        buf[3 * i + 2] = rgb[2];
    };
    auto to_px = [&](cplx z, double& x, double& y) {
        x = (z.real() - grid.viewport.re0) / (grid.viewport.re1 - grid.viewport.re0) * grid.width - 0.5;
        y = (grid.viewport.im1 - z.imag()) / (grid.viewport.im1 - grid.viewport.im0) * grid.height - 0.5;
    };
    for (const Overlay& ov : overlays) {
        for (const auto& line : ov.polylines) {
            for (std::size_t i = 0; i + 1 < line.size() + 1; ++i) {
                cplx a = line[i % line.size()];
                cplx b = line[(i + 1) % line.size()];
                double x0, y0, x1, y1;
                to_px(a, x0, y0);
                to_px(b, x1, y1);
                int steps = std::max(1, int(std::max(std::abs(x1 - x0), std::abs(y1 - y0))) + 1);
                for (int s = 0; s <= steps; ++s) {
                    double u = double(s) / steps;
                    plot(int(std::lround(x0 + u * (x1 - x0))), int(std::lround(y0 + u * (y1 - y0))),
                         ov.rgb);
                }
            }
        }
    }
    out.append(reinterpret_cast<const char*>(buf.data()), buf.size());
    return out;
}

TrapRegion trap_for_B_infinity(const BlaschkeCubic& m, double eta) {
    // Chart w = 1/z; the mirror of the interior critical point bounds the radius.
    double dist = 1e9;
    for (cplx c : m.critical_points()) {
        if (std::abs(c) > 1.0) dist = std::min(dist, 1.0 / std::abs(c));
    }
    BlaschkeCubic model = m;
    return make_trap([model](cplx w) { return 1.0 / model.eval(1.0 / w); }, dist, eta);
}

TrapRegion trap_for_F(const QuadRational& F, bool at_infinity, double eta) {
    QuadRational model = F;
    auto crits = F.critical_points();
    if (!at_infinity) {
        double dist = 1e9;
        for (cplx c : crits) dist = std::min(dist, std::abs(c));
        return make_trap([model](cplx z) { return model.eval(z); }, dist, eta);
    }
    double dist = 1e9;
    for (cplx c : crits)
        if (std::abs(c) > 0.0) dist = std::min(dist, 1.0 / std::abs(c));
    return make_trap([model](cplx w) { return model.eval_inf_chart(w); }, dist, eta);
}

TrapRegion trap_for_chebyshev(const ChebyshevQuotient& G, double eta) {
    ChebyshevQuotient model = G;
    double dist = std::min(std::abs(G.c1 - 1.0), std::abs(G.c2 - 1.0));
    return make_trap([model](cplx w) { return model.eval(w + 1.0) - 1.0; }, dist, eta);
}

}  // namespace siegelmate
