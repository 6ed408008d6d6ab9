#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "fiberdyn/bundle.hpp"
#include "fiberdyn/error.hpp"
#include "fiberdyn/fluxaction.hpp"
#include "fiberdyn/mesh.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "suites.hpp"

namespace fs = std::filesystem;

namespace fiberdyn::cli {

namespace {

void write_json(const std::string& out, const std::string& name, const json& j) {
  fs::path p = fs::path(out) / name;
  std::ofstream f(p);
  if (!f) throw Error(ErrorKind::Config, "cannot write '" + p.string() + "'");
  f << j.dump(2) << '\n';
}

// Sources from sources.n and sources.positions (3 numbers per source, default origin).
std::vector<MonopoleSource> read_sources(const Config& c) {
  std::vector<double> n = c.has("sources.n") ? c.list("sources.n") : std::vector<double>{1.0};
  std::vector<MonopoleSource> s;
  std::vector<double> pos;
  if (c.has("sources.positions")) {
    pos = c.list("sources.positions");
    if (pos.size() != 3 * n.size()) c.fail("sources.positions", "expected three numbers per source");
  }
  for (std::size_t k = 0; k < n.size(); ++k) {
    Vec3 x = pos.empty() ? Vec3::Zero() : Vec3(pos[3 * k], pos[3 * k + 1], pos[3 * k + 2]);
    s.push_back({n[k], x});
  }
  return s;
}

Config load_or_empty(const std::string& path) {
  if (path.empty()) {
    std::istringstream none;
    return Config::parse(none, "<defaults>");
  }
  return Config::load(path);
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

int cmd_simulate(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
                 std::ostream& log) {
  Scenario s;
  try {
    Config c = Config::load(config);
    s = build_scenario(c);
    if (!c.has("output.csv")) s.csv = fs::path(config).stem().string() + ".csv";
    if (!c.has("output.report")) s.report = fs::path(config).stem().string() + ".json";
    if (seed) s.seed = *seed;
  } catch (const Error& e) {
    log << config << ": " << e.what() << '\n';
    return kExitConfig;
  }
  RunResult r;
  try {
    r = run(s.system, s.initial, s.stepper);
  } catch (const Error& e) {
    log << config << ": " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    std::ofstream csv(fs::path(out) / s.csv);
    if (!csv) throw Error(ErrorKind::Config, "cannot write '" + (fs::path(out) / s.csv).string() + "'");
    write_csv(csv, s, r.trajectory);
    json j = to_json(r.report);
    j["system"] = s.id;
    j["method"] = method_name(s.stepper.method);
    j["dt"] = s.stepper.dt;
    j["t_end"] = s.stepper.t_end;
    j["seed"] = s.seed;
    j["config"] = config;
    j["csv"] = s.csv;
    write_json(out, s.report, j);
  } catch (const Error& e) {
    log << config << ": " << e.what() << '\n';
    return kExitConfig;
  }

  log << config << ": " << s.id << ", " << r.report.steps << " steps to t = " << r.report.t_final;
  if (r.report.halted) {
    log << ", halted: " << r.report.halt_reason << '\n';
    return kExitHalt;
  }
  int code = kExitOk;
  for (const auto& m : r.report.monitors)
    if (!m.passed()) {
      log << "\n  " << m.name << " drift " << m.max_drift << " exceeds " << m.tolerance << " at t = "
          << *m.first_violation;
      code = kExitViolation;
    }
  log << (code == kExitOk ? ", all monitors within tolerance\n" : "\n");
  return code;
}

int cmd_check(const std::string& suite, std::uint64_t seed, const std::string& out, std::ostream& log) {
  SuiteReport r;
  try {
    r = run_suite(suite, seed);
    write_json(out, "check_" + suite + ".json", to_json(r));
  } catch (const Error& e) {
    log << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kExitConfig : kExitViolation;
  }
  for (const auto& i : r.items)
    log << (i.passed ? "pass  " : "FAIL  ") << i.identity << "  residual " << i.residual << "  tol "
        << i.tolerance << '\n';
  log << suite << ": " << (r.passed() ? "passed" : "failed") << '\n';
  return r.passed() ? kExitOk : kExitViolation;
}

int cmd_reduce(const std::string& config, const std::string& out, std::ostream& log) {
  Scenario s;
  double monopole_dt = 0.0, drift_tol = 1e-8, div_tol = 1e-4;
  std::string name;
  try {
    Config c = Config::load(config);
    s = build_scenario(c, false);
    if (!s.wong) c.fail("system.id", "reduce needs a wong scenario");
    monopole_dt = c.num("reduce.monopole_dt", s.stepper.dt);
    drift_tol = c.num("reduce.n_drift_tolerance", drift_tol);
    div_tol = c.num("reduce.divergence_tolerance", div_tol);
    name = c.str("output.reduce", "reduce.json");
    if (!(monopole_dt > 0.0)) c.fail("reduce.monopole_dt", "must be positive");
    c.reject_unused();
  } catch (const Error& e) {
    log << config << ": " << e.what() << '\n';
    return kExitConfig;
  }
  RunResult r = run(s.system, s.initial, s.stepper);
  if (r.report.halted) {
    log << config << ": halted: " << r.report.halt_reason << '\n';
    write_json(out, name, {{"halted", true}, {"halt_reason", r.report.halt_reason}});
    return kExitHalt;
  }
  ReductionReport red;
  try {
    red = hedgehog_reduction_check(r.trajectory, *s.wong, monopole_dt, s.r_min);
  } catch (const Error& e) {
    log << config << ": " << e.what() << '\n';
    if (e.kind() == ErrorKind::ExclusionZone) return kExitHalt;
    return kExitConfig;
  }
  json j = to_json(red, drift_tol, div_tol);
  j["invariants"] = to_json(r.report);
  j["config"] = config;
  write_json(out, name, j);
  bool ok = red.n_drift <= drift_tol && red.inequality_holds && red.max_divergence <= div_tol &&
            r.report.passed();
  log << config << ": n0 = " << red.n0 << ", n drift " << red.n_drift << ", max divergence "
      << red.max_divergence << ", inequality " << (red.inequality_holds ? "holds" : "VIOLATED") << '\n';
  return ok ? kExitOk : kExitViolation;
}

int cmd_flux(const std::string& config, const std::string& out, std::ostream& log) {
  json j;
  bool ok = true;
  try {
    Config c = load_or_empty(config);
    auto sources = read_sources(c);
    double r_min = c.num("r_min", 1e-4);
    double rel_tol = c.num("flux.relative_tolerance", 1e-3);
    double abs_tol = c.num("flux.absolute_tolerance", 1e-6);
    std::string kind = c.str("mesh.kind", "icosphere");
    SurfaceMesh mesh;
    std::optional<double> expected;
    if (kind == "icosphere") {
      long level = c.integer("mesh.level", 5);
      double radius = c.num("mesh.radius", 1.0);
      Vec3 center = c.vec3("mesh.center", Vec3::Zero());
      if (level < 0 || level > 8) c.fail("mesh.level", "expected 0..8");
      if (!(radius > 0.0)) c.fail("mesh.radius", "must be positive");
      mesh = icosphere(int(level), radius, center);
      double e = 0.0;
      for (const auto& s : sources)
        if ((s.position - center).norm() < radius) e += -4.0 * M_PI * s.n;
      expected = e;
      j["mesh"] = {{"kind", kind}, {"level", level}, {"radius", radius}, {"center", vec_json(center)}};
    } else if (kind == "off") {
      std::string path = c.str("mesh.path");
      std::ifstream f(path);
      if (!f) c.fail("mesh.path", "cannot open '" + path + "'");
      mesh = read_off(f);
      j["mesh"] = {{"kind", kind}, {"path", path}};
    } else {
      c.fail("mesh.kind", "expected icosphere or off, got '" + kind + "'");
    }
    std::vector<double> charges = c.has("quantization.charges") ? c.list("quantization.charges")
                                                                : std::vector<double>{1.0, 3.0 / 7.0};
    double qtol = c.num("quantization.tolerance", 1e-9);
    c.reject_unused();

    OrientationReport o = check_orientation(mesh);
    j["triangles"] = mesh.triangles.size();
    j["closed"] = mesh.closed;
    j["orientation_consistent"] = o.consistent;
    double phi = flux(monopole_field_form(sources, r_min), mesh);
    j["flux"] = phi;
    if (expected) {
      double err = std::abs(phi - *expected);
      bool pass;
      if (*expected != 0.0) {
        err /= std::abs(*expected);
        pass = err <= rel_tol;
        j["relative_error"] = err;
        j["tolerance"] = rel_tol;
      } else {
        pass = err <= abs_tol;
        j["absolute_error"] = err;
        j["tolerance"] = abs_tol;
      }
      j["expected"] = *expected;
      j["passed"] = pass;
      ok = ok && pass;
      log << "flux " << phi << " expected " << *expected << (pass ? " (pass)" : " (FAIL)") << '\n';
    } else {
      log << "flux " << phi << '\n';
    }
    QuantizationResult q = quantization_check(charges, qtol);
    json qj{{"charges", charges}, {"tolerance", qtol}, {"commensurable", q.commensurable}};
    qj["lambda_w"] = q.lambda_w ? json(*q.lambda_w) : json(nullptr);
    qj["ratios"] = json::array();
    for (auto [p, r] : q.ratios) qj["ratios"].push_back({p, r});
    j["quantization"] = qj;
    log << "charges " << (q.commensurable ? "commensurable" : "incommensurable");
    if (q.lambda_w) log << ", lambda_w = " << *q.lambda_w;
    log << '\n';
    write_json(out, c.str("output.report", "flux.json"), j);
  } catch (const Error& e) {
    log << (config.empty() ? "flux" : config) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::SingularSurface ? kExitHalt : kExitConfig;
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_cocycle(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out,
                std::ostream& log) {
  try {
    Config c = load_or_empty(config);
    std::string cover_id = c.str("cover", "tetrahedral");
    PatchCover cover;
    if (cover_id == "tetrahedral")
      cover = tetrahedral_cover(c.num("cover.radius", 1.3));
    else if (cover_id == "two_patch")
      cover = two_patch_cover();
    else
      c.fail("cover", "expected tetrahedral or two_patch, got '" + cover_id + "'");
    auto sources = read_sources(c);
    std::vector<double> charges;
    for (const auto& s : sources) charges.push_back(s.n);
    QuantizationResult q = quantization_check(charges);
    double lambda_w = c.has("lambda_w") ? c.num("lambda_w") : (q.lambda_w ? *q.lambda_w : 1.0);
    int samples = int(c.integer("samples", 8));
    double tol = c.num("tolerance", 1e-6);
    std::uint64_t sd = seed ? *seed : c.u64("seed", 1);
    std::string name = c.str("output.report", "cocycle.json");
    c.reject_unused();
    if (samples < 1) throw Error(ErrorKind::Config, "samples must be at least 1");

    LineTransitions f(cover, sources);
    CocycleReport r = cocycle_integers(cover, f.fn(), lambda_w, samples, sd, tol);
    json j = to_json(r);
    j["seed"] = sd;
    j["tolerance"] = tol;
    j["coverage"] = cover.coverage(20000, sd);
    if (sources.size() == 1 && sources[0].position.isZero()) {
      WindingResult w = equator_winding(sources[0].n);
      j["equator_winding"] = {{"turns", w.turns}, {"winding", w.winding}, {"deviation", w.deviation}};
      log << "equatorial winding " << w.winding << '\n';
    }
    write_json(out, name, j);
    log << r.cover_id << ": " << r.triples.size() << " triples, max deviation " << r.max_deviation
        << (r.violation ? ", quantization violated" : ", integral") << '\n';
    return r.violation ? kExitViolation : kExitOk;
  } catch (const Error& e) {
    log << (config.empty() ? "cocycle" : config) << ": " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace fiberdyn::cli
