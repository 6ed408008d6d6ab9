#pragma once

#include <optional>
#include <string>

#include "config.hpp"
#include "fiberdyn/dynamics.hpp"
#include "fiberdyn/integrate.hpp"

namespace fiberdyn::cli {

struct Scenario {
  std::string id;  // system id
  System system;
  State initial;
  StepperConfig stepper;
  std::string csv = "trajectory.csv";
  std::string report = "report.json";
  std::uint64_t seed = 0;
  std::optional<WongParams> wong;  // set for wong scenarios
  double r_min = 1e-4;
};

// Reads every key it understands; with reject_unknown the rest is an error.
Scenario build_scenario(const Config& cfg, bool reject_unknown = true);

std::string method_name(Method m);

}  // namespace fiberdyn::cli
