#pragma once

#include <string>

#include "json.hpp"
#include "siegelmate/angle_series.hpp"
#include "siegelmate/big_angle.hpp"
#include "siegelmate/blaschke.hpp"
#include "siegelmate/drops.hpp"
#include "siegelmate/rational_maps.hpp"
#include "siegelmate/rays.hpp"

namespace siegelmate {

using Json = nlohmann::ordered_json;

Json to_json(const BigAngle& a);
Json to_json(cplx z);
Json to_json(const ContinuedFraction& cf);
Json to_json(const RotationEstimate& r);
Json to_json(const RelationReport& r, bool include_table = false);
Json to_json(const ExternalRay& r, bool include_polyline = false);

Json solve_json(const std::string& family, const ContinuedFraction& theta,
                const ContinuedFraction* nu, const SolveResult& res, const BlaschkeCubic* model,
                const CriticalResiduals& residuals);

Json quad_rational_json(const QuadRational& F, const BetaPoints* beta);
Json drop_tree_json(const DropTree& tree);

std::string relation_csv(const RelationReport& r);
std::string drop_boundaries_csv(const DropTree& tree);
std::string ray_polylines_csv(const std::vector<ExternalRay>& rays);
std::string pinch_csv(const std::vector<PinchPair>& pairs);
std::string closest_returns_csv(const std::vector<long>& moments, const std::vector<double>& arcs);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace siegelmate
