#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace fiberdyn::cli {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitHalt = 3;

// Each command writes its files into `out` and a short summary to `log`.
int cmd_simulate(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed,
                 std::ostream& log);
int cmd_check(const std::string& suite, std::uint64_t seed, const std::string& out, std::ostream& log);
int cmd_reduce(const std::string& config, const std::string& out, std::ostream& log);
// An empty config path runs the defaults: level-5 unit icosphere, n = 1, charges (1, 3/7).
int cmd_flux(const std::string& config, const std::string& out, std::ostream& log);
int cmd_cocycle(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out,
                std::ostream& log);

}  // namespace fiberdyn::cli
