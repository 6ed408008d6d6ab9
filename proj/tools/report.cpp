#include "report.hpp"

#include <cstdio>

namespace fiberdyn::cli {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json to_json(const InvariantReport& r) {
  json j;
  j["steps"] = r.steps;
  j["t_final"] = r.t_final;
  j["halted"] = r.halted;
  if (r.halted) j["halt_reason"] = r.halt_reason;
  j["passed"] = r.passed();
  j["monitors"] = json::array();
  for (const auto& m : r.monitors) {
    json e{{"name", m.name},
           {"initial", m.initial},
           {"max_drift", m.max_drift},
           {"tolerance", m.tolerance},
           {"passed", m.passed()}};
    e["first_violation"] = m.first_violation ? json(*m.first_violation) : json(nullptr);
    j["monitors"].push_back(e);
  }
  return j;
}

json to_json(const SuiteReport& r) {
  json j{{"suite", r.suite}, {"seed", r.seed}, {"passed", r.passed()}};
  j["checks"] = json::array();
  for (const auto& c : r.items)
    j["checks"].push_back(
        {{"identity", c.identity}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  return j;
}

json to_json(const CocycleReport& r) {
  json j{{"cover_id", r.cover_id},
         {"lambda_w", r.lambda_w},
         {"max_deviation", r.max_deviation},
         {"max_u1_defect", r.max_u1_defect},
         {"violation", r.violation}};
  j["triples"] = json::array();
  for (const auto& t : r.triples) {
    json e{{"patches", t.patches}, {"deviation", t.deviation}, {"u1_defect", t.u1_defect}};
    e["points"] = json::array();
    for (const auto& p : t.points) e["points"].push_back({p[0], p[1], p[2]});
    e["n_abc"] = t.n_abc;
    e["integers"] = t.integers;
    j["triples"].push_back(e);
  }
  return j;
}

json to_json(const ReductionReport& r, double drift_tol, double divergence_tol) {
  json j{{"n0", r.n0},
         {"n_drift", r.n_drift},
         {"n_drift_tolerance", drift_tol},
         {"n_drift_passed", r.n_drift <= drift_tol},
         {"inequality_holds", r.inequality_holds},
         {"max_divergence", r.max_divergence},
         {"divergence_tolerance", divergence_tol},
         {"divergence_passed", r.max_divergence <= divergence_tol}};
  j["samples"] = json::array();
  for (const auto& s : r.samples)
    j["samples"].push_back({{"t", s.t},
                            {"n", s.n},
                            {"n_squared", s.n * s.n},
                            {"half_casimir", s.half_casimir},
                            {"inequality", s.n * s.n <= s.half_casimir * (1.0 + 1e-12) + 1e-15},
                            {"divergence", s.divergence},
                            {"south_patch", s.south_patch}});
  return j;
}

void write_csv(std::ostream& out, const Scenario& s, const Trajectory& traj) {
  out << "t";
  for (const auto& l : s.system.flat_labels) out << ',' << l;
  for (const auto& l : s.system.group_labels) out << ',' << l << "_w," << l << "_a," << l << "_b," << l << "_c";
  for (const auto& m : s.stepper.monitors) out << ',' << m.name;
  out << '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const State& y = traj.states[k];
    out << g17(traj.times[k]);
    for (Eigen::Index i = 0; i < y.flat.size(); ++i) out << ',' << g17(y.flat[i]);
    for (const auto& q : y.group)
      for (double c : q.q()) out << ',' << g17(c);
    for (const auto& m : s.stepper.monitors) out << ',' << g17(m.value(traj.times[k], y));
    out << '\n';
  }
}

}  // namespace fiberdyn::cli
