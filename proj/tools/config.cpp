#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fiberdyn/error.hpp"

namespace fiberdyn::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return k.find("..") == std::string::npos;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config c;
  c.source_ = source;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto where = source + ":" + std::to_string(n) + ": ";
    if (eq == std::string::npos) throw Error(ErrorKind::Config, where + "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw Error(ErrorKind::Config, where + "malformed key '" + key + "'");
    if (value.empty()) throw Error(ErrorKind::Config, where + "empty value for '" + key + "'");
    auto it = c.entries_.find(key);
    if (it != c.entries_.end())
      throw Error(ErrorKind::Config, where + "duplicate key '" + key + "' (first at line " +
                                         std::to_string(it->second.line) + ")");
    c.entries_[key] = {value, n};
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Config, "cannot open config '" + path + "'");
  return parse(f, path);
}

void Config::fail(const std::string& key, const std::string& what) const {
  auto it = entries_.find(key);
  std::string where = it == entries_.end() ? source_ + ": "
                                            : source_ + ":" + std::to_string(it->second.line) + ": ";
  throw Error(ErrorKind::Config, where + key + ": " + what);
}

const Config::Entry& Config::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorKind::Config, source_ + ": missing key '" + key + "'");
  used_.insert(key);
  return it->second;
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string Config::str(const std::string& key) const { return entry(key).value; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::num(const std::string& key) const {
  const std::string& v = entry(key).value;
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail(key, "not a number: '" + v + "'");
  }
  if (pos != v.size() || !std::isfinite(x)) fail(key, "not a finite number: '" + v + "'");
  return x;
}

double Config::num(const std::string& key, double fallback) const {
  return has(key) ? num(key) : fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  double x = num(key);
  if (x != std::floor(x)) fail(key, "expected an integer");
  return long(x);
}

std::uint64_t Config::u64(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = entry(key).value;
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    fail(key, "not an unsigned integer: '" + v + "'");
  }
  if (pos != v.size()) fail(key, "not an unsigned integer: '" + v + "'");
  return x;
}

std::vector<double> Config::list(const std::string& key) const {
  std::string v = entry(key).value;
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &pos);
    } catch (const std::exception&) {
      fail(key, "bad list entry '" + item + "'");
    }
    if (pos != item.size() || !std::isfinite(x)) fail(key, "bad list entry '" + item + "'");
    out.push_back(x);
  }
  return out;
}

Vec3 Config::vec3(const std::string& key) const {
  auto l = list(key);
  if (l.size() != 3) fail(key, "expected three comma-separated numbers");
  return Vec3(l[0], l[1], l[2]);
}

Vec3 Config::vec3(const std::string& key, const Vec3& fallback) const {
  return has(key) ? vec3(key) : fallback;
}

void Config::reject_unused() const {
  for (const auto& [key, e] : entries_)
    if (!used_.count(key))
      throw Error(ErrorKind::Config,
                  source_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "'");
}

}  // namespace fiberdyn::cli
