#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fiberdyn::cli {

struct CheckItem {
  std::string identity;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckItem> items;
  bool passed() const;
  // residual <= tolerance
  void add(const std::string& identity, double residual, double tolerance);
  // for yes/no findings
  void add_flag(const std::string& identity, bool ok);
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

SuiteReport identities_suite(std::uint64_t seed);
SuiteReport brackets_suite(std::uint64_t seed);
SuiteReport grassmann_suite(std::uint64_t seed);
SuiteReport flux_suite(std::uint64_t seed);
SuiteReport cocycle_suite(std::uint64_t seed);

}  // namespace fiberdyn::cli
