#include "siegelmate/json_io.hpp"

#include <fstream>
#include <sstream>

#include "siegelmate/errors.hpp"

namespace siegelmate {

Json to_json(const BigAngle& a) {
    Json j;
    j["mantissa_hex"] = a.mantissa_hex();
    j["bits"] = a.bits();
    j["err"] = a.err();
    j["err_log2"] = a.err_log2();
    j["value"] = a.to_double();
    return j;
}

Json to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ContinuedFraction& cf) {
    Json j;
    j["entries"] = cf.entries();
    j["origin"] = cf.origin() == CfOrigin::ExactInput ? "exact-input" : "truncated-from-real";
    j["value"] = cf.value();
    return j;
}

Json to_json(const RotationEstimate& r) {
    return Json{{"unreduced", r.unreduced}, {"mod1", r.mod1}, {"error_bar", r.error_bar},
                {"iters", r.iters}};
}

Json to_json(const RelationReport& r, bool include_table) {
    Json j;
    j["bits"] = r.bits;
    j["N"] = r.N;
    j["min_distance"] = r.min_distance;
    j["argmin"] = Json{{"n", r.argmin_n}, {"m", r.argmin_m}};
    j["certified_positive"] = r.certified_positive;
    j["solution_found"] = r.solution_found;
    if (include_table) {
        Json t = Json::array();
        for (const auto& e : r.table)
            t.push_back(Json{{"n", e.n}, {"m", e.m}, {"distance", e.distance}});
        j["table"] = t;
    }
    return j;
}

Json to_json(const ExternalRay& r, bool include_polyline) {
    Json j;
    j["angle"] = to_json(r.angle);
    j["landed"] = r.landed;
    j["landing"] = to_json(r.landing);
    j["landing_radius"] = r.landing_radius;
    j["steps"] = r.steps;
    if (include_polyline) {
        Json p = Json::array();
        for (const auto& [pot, z] : r.polyline)
            p.push_back(Json{{"potential", pot}, {"re", z.real()}, {"im", z.imag()}});
        j["polyline"] = p;
    }
    return j;
}

Json solve_json(const std::string& family, const ContinuedFraction& theta,
                const ContinuedFraction* nu, const SolveResult& res, const BlaschkeCubic* model,
                const CriticalResiduals& residuals) {
    Json j;
    j["family"] = family;
    j["theta_cf"] = theta.entries();
    if (nu) j["nu_cf"] = nu->entries();
    j["t"] = res.t;
    if (model) {
        j["a"] = to_json(model->a);
        j["b"] = to_json(model->b);
        j["lambda"] = to_json(model->lambda);
    }
    j["rotation_estimate"] = to_json(res.rotation);
    j["target_unreduced"] = res.target_unreduced;
    j["residuals"] = Json{{"B1", residuals.first}, {"B2", residuals.second}};
    Json brs = Json::array();
    for (const auto& b : res.brackets)
        brs.push_back(Json{{"t_lo", b.t_lo}, {"t_hi", b.t_hi}, {"g_lo", b.g_lo}, {"g_hi", b.g_hi}});
    j["brackets"] = brs;
    return j;
}

Json quad_rational_json(const QuadRational& F, const BetaPoints* beta) {
    Json j;
    j["theta"] = F.theta;
    j["nu"] = F.nu;
    j["mu1"] = to_json(F.mu1);
    j["mu2"] = to_json(F.mu2);
    j["mu3"] = to_json(F.mu3);
    j["sigma1"] = to_json(F.sigma1);
    j["sigma2"] = to_json(F.sigma2);
    j["sigma3"] = to_json(F.sigma3);
    if (beta) {
        j["beta"] = to_json(beta->beta);
        j["beta_prime"] = to_json(beta->beta_prime);
    }
    return j;
}

Json drop_tree_json(const DropTree& tree) {
    Json j;
    Json nodes = Json::array();
    for (const auto& [a, n] : tree.nodes()) {
        nodes.push_back(Json{{"address", a.str()},
                             {"depth", a.depth()},
                             {"generation", a.generation()},
                             {"root", to_json(n.root)},
                             {"diameter", n.diameter},
                             {"limb_diameter", n.limb_diameter},
                             {"side", n.side == DropSide::UnitDisk ? "unit-disk" : "infinity"},
                             {"samples", n.boundary.size()}});
    }
    j["nodes"] = nodes;
    Json prof = Json::object();
    for (const auto& [d, v] : tree.limb_diameter_profile()) prof[std::to_string(d)] = v;
    j["limb_diameter_profile"] = prof;
    return j;
}

std::string relation_csv(const RelationReport& r) {
    std::ostringstream os;
    os << "n,m,distance\n";
    for (const auto& e : r.table) os << e.n << "," << e.m << "," << e.distance << "\n";
    return os.str();
}

std::string drop_boundaries_csv(const DropTree& tree) {
    std::ostringstream os;
    os << "address,index,re,im\n";
    os.precision(17);
    for (const auto& [a, n] : tree.nodes()) {
        for (std::size_t i = 0; i < n.boundary.size(); ++i)
            os << a.str() << "," << i << "," << n.boundary[i].real() << "," << n.boundary[i].imag()
               << "\n";
    }
    return os.str();
}

std::string ray_polylines_csv(const std::vector<ExternalRay>& rays) {
    std::ostringstream os;
    os << "angle,potential,re,im\n";
    os.precision(17);
    for (const auto& r : rays) {
        double ang = r.angle.to_double();
        for (const auto& [pot, z] : r.polyline)
            os << ang << "," << pot << "," << z.real() << "," << z.imag() << "\n";
    }
    return os.str();
}

std::string pinch_csv(const std::vector<PinchPair>& pairs) {
    std::ostringstream os;
    os << "s,t,z_re,z_im,zp_re,zp_im,separation\n";
    os.precision(17);
    for (const auto& p : pairs)
        os << p.s.to_double() << "," << p.t.to_double() << "," << p.z.real() << "," << p.z.imag()
           << "," << p.z_prime.real() << "," << p.z_prime.imag() << "," << p.separation << "\n";
    return os.str();
}

std::string closest_returns_csv(const std::vector<long>& moments, const std::vector<double>& arcs) {
    std::ostringstream os;
    os << "level,q_n,arc,ratio\n";
    os.precision(17);
    for (std::size_t i = 0; i < moments.size(); ++i) {
        os << i << "," << moments[i] << ",";
        if (i < arcs.size()) os << arcs[i];
        os << ",";
        if (i + 1 < arcs.size() && arcs[i] > 0.0) os << arcs[i + 1] / arcs[i];
        os << "\n";
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericError("cannot open " + path + " for writing");
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) throw NumericError("short write to " + path);
}

}  // namespace siegelmate
