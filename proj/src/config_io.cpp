#include "shseig/config_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "shseig/errors.hpp"

namespace shseig {
namespace {

constexpr std::array<std::string_view, 10> kKeys = {
    "T", "H11", "H12", "H13", "H21", "H22", "H23", "H31", "H32", "H33"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Coefficients parse_config(std::istream& in, std::string_view origin) {
  const std::string where(origin);
  std::map<std::string, double, std::less<>> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(ConfigError::Kind::parse, where, line_no, "",
                        "expected `key = value`");
    const std::string_view key = trim(sv.substr(0, eq));
    const std::string_view val = trim(sv.substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw ConfigError(ConfigError::Kind::unknown_key, where, line_no,
                        std::string(key), "unknown key `" + std::string(key) + "`");
    if (values.find(key) != values.end())
      throw ConfigError(ConfigError::Kind::duplicate_key, where, line_no,
                        std::string(key), "duplicate key `" + std::string(key) + "`");
    if (val.empty())
      throw ConfigError(ConfigError::Kind::parse, where, line_no, std::string(key),
                        "missing value for `" + std::string(key) + "`");
    const std::string vbuf(val);
    char* end = nullptr;
    const double parsed = std::strtod(vbuf.c_str(), &end);
    if (end != vbuf.c_str() + vbuf.size())
      throw ConfigError(ConfigError::Kind::parse, where, line_no, std::string(key),
                        "cannot parse value `" + vbuf + "`");
    values.emplace(std::string(key), parsed);
  }
  if (in.bad())
    throw ConfigError(ConfigError::Kind::io, where, 0, "", "read failure");
  for (const auto key : kKeys)
    if (values.find(key) == values.end())
      throw ConfigError(ConfigError::Kind::missing_key, where, 0, std::string(key),
                        "missing key `" + std::string(key) + "`");
  Coefficients c;
  c.T = values.find("T")->second;
  c.H11 = values.find("H11")->second;
  c.H12 = values.find("H12")->second;
  c.H13 = values.find("H13")->second;
  c.H21 = values.find("H21")->second;
  c.H22 = values.find("H22")->second;
  c.H23 = values.find("H23")->second;
  c.H31 = values.find("H31")->second;
  c.H32 = values.find("H32")->second;
  c.H33 = values.find("H33")->second;
  return c;
}

Coefficients parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigError::Kind::io, path, 0, "", "cannot open file");
  return parse_config(in, path);
}

void write_config(std::ostream& out, const Coefficients& c) {
  const std::pair<std::string_view, double> kv[] = {
      {"T", c.T},     {"H11", c.H11}, {"H12", c.H12}, {"H13", c.H13},
      {"H21", c.H21}, {"H22", c.H22}, {"H23", c.H23}, {"H31", c.H31},
      {"H32", c.H32}, {"H33", c.H33}};
  for (const auto& [k, v] : kv) out << k << " = " << format_g17(v) << "\n";
}

}  // namespace shseig
