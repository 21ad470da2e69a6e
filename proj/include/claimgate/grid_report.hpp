#pragma once

#include <string>

#include <json.hpp>

#include "claimgate/planner.hpp"
#include "claimgate/run_config.hpp"

namespace claimgate {

// Long format: one row per (n, delta, preset) with columns
// n,delta,preset,congruence,probability,std_err,band,status.
std::string grid_csv(const PlanningGrid& grid, const RunConfig& config);

// Standalone SVG heatmap: one rectangle per cell coloured by its band, the
// median-congruence probability in the centre and the (q1, q3) pair below.
std::string grid_svg(const PlanningGrid& grid, const RunConfig& config);

nlohmann::ordered_json grid_json(const PlanningGrid& grid, const RunConfig& config);

}  // namespace claimgate
