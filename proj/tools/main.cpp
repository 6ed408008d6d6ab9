#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace fiberdyn::cli;

namespace {

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FIBERDYN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = unsigned(v);
  }
  return n;
}

int severity(int code) {
  switch (code) {
    case kExitConfig: return 3;
    case kExitHalt: return 2;
    case kExitViolation: return 1;
    default: return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fiberdyn: particle systems on fiber bundles, with invariant checks"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string suite;

  auto* sim = app.add_subcommand("simulate", "integrate one or more scenarios, write CSV and JSON report");
  sim->add_option("--config", configs, "scenario config file(s)")->required();
  sim->add_option("--out", out, "output directory");
  sim->add_option("--seed", seed, "seed recorded in the report");

  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"brackets", "grassmann", "cocycle", "flux", "identities"}));
  check->add_option("--seed", seed, "random seed");
  check->add_option("--out", out, "output directory");

  std::string config;
  auto* reduce = app.add_subcommand("reduce", "hedgehog reduction of a Wong scenario to the monopole system");
  reduce->add_option("--config", config, "Wong scenario config")->required();
  reduce->add_option("--out", out, "output directory");

  auto* fluxc = app.add_subcommand("flux", "flux of the monopole form through a mesh, and quantization");
  fluxc->add_option("--config", config, "flux config");
  fluxc->add_option("--out", out, "output directory");

  auto* coc = app.add_subcommand("cocycle", "cocycle integers on a patch cover");
  coc->add_option("--config", config, "cocycle config");
  coc->add_option("--seed", seed, "random seed");
  coc->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    std::cerr << "cannot create output directory '" << out << "': " << ec.message() << '\n';
    return kExitConfig;
  }

  if (*sim) {
    std::vector<std::string> logs(configs.size());
    std::vector<int> codes(configs.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < configs.size();) {
        std::ostringstream log;
        codes[i] = cmd_simulate(configs[i], out, seed, log);
        logs[i] = log.str();
      }
    };
    unsigned n = std::min<unsigned>(thread_cap(), unsigned(configs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    int code = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      std::cout << logs[i];
      if (severity(codes[i]) > severity(code)) code = codes[i];
    }
    return code;
  }
  if (*check) return cmd_check(suite, seed.value_or(1), out, std::cout);
  if (*reduce) return cmd_reduce(config, out, std::cout);
  if (*fluxc) return cmd_flux(config, out, std::cout);
  if (*coc) return cmd_cocycle(config, seed, out, std::cout);
  return kExitConfig;
}
