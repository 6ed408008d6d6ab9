#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fiberdyn/liealg.hpp"

namespace fiberdyn {

// Flat coordinates plus SU(2) components.
struct State {
  Eigen::VectorXd flat;
  std::vector<GroupPoint> group;
};

// Group velocities are algebra vectors (element -i w.sigma/2).
struct Tangent {
  Eigen::VectorXd flat;
  std::vector<Su2Vector> group;
};

// Left: s' = s W.  Right: s' = W s.
enum class Trivialization { Left, Right };

struct System {
  std::string name;
  std::function<Tangent(double t, const State&)> rhs;
  Trivialization trivialization = Trivialization::Right;
  std::function<void(State&)> project;  // optional, applied after each accepted step
  std::vector<std::string> flat_labels;
  std::vector<std::string> group_labels;
};

enum class Method { RK4, LieGroupRK4 };

struct Monitor {
  std::string name;
  std::function<double(double t, const State&)> value;
  double tolerance = 0.0;
  bool drift = true;  // compare against the initial value, otherwise against zero
};

struct StepperConfig {
  Method method = Method::RK4;
  double dt = 1e-3;
  double t_end = 0.0;
  int record_every = 1;
  std::vector<Monitor> monitors;
};

State rk4_step(const System& sys, const State& y, double t, double dt);
State liegroup_step(const System& sys, const State& y, double t, double dt);
State step(Method method, const System& sys, const State& y, double t, double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
};

struct MonitorResult {
  std::string name;
  double initial = 0.0;
  double max_drift = 0.0;
  double tolerance = 0.0;
  std::optional<double> first_violation;
  bool passed() const { return !first_violation.has_value(); }
};

struct InvariantReport {
  std::vector<MonitorResult> monitors;
  bool halted = false;
  std::string halt_reason;
  long steps = 0;
  double t_final = 0.0;
  bool passed() const;
};

struct RunResult {
  Trajectory trajectory;
  InvariantReport report;
};

RunResult run(const System& sys, const State& initial, const StepperConfig& config);

// Integrate without recording; returns the final state.
State integrate_to(Method method, const System& sys, const State& initial, double dt, double t_end);

}  // namespace fiberdyn
