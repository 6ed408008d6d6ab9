#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "fiberdyn/bundle.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/integrate.hpp"
#include "scenario.hpp"
#include "suites.hpp"

namespace fiberdyn::cli {

using nlohmann::json;

json to_json(const InvariantReport& r);
json to_json(const SuiteReport& r);
json to_json(const CocycleReport& r);
json to_json(const ReductionReport& r, double drift_tol, double divergence_tol);

// t, flat labels, group labels as _w/_a/_b/_c, then one column per monitor.
void write_csv(std::ostream& out, const Scenario& s, const Trajectory& traj);

}  // namespace fiberdyn::cli
