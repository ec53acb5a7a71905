#include "config.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polyball/types.hpp"

namespace polyball::cli {
namespace {

std::vector<std::string> split_commas(const std::string& text, const std::string& flag) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ConfigError(flag + ": empty list item in '" + text + "'");
    items.push_back(item);
  }
  if (items.empty()) throw ConfigError(flag + ": empty list");
  return items;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const auto& item : split_commas(text, flag)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw ConfigError(flag + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_commas(text, flag)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": '" + item + "' is not a number");
    }
    if (used != item.size()) throw ConfigError(flag + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

void validate(const RunConfig& c, bool check_shape) {
  if (check_shape) validate_shape(c.n, c.degrees);
  if (c.max_len < 1) throw ConfigError("--max-len must be >= 1");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ConfigError("--tol must be positive");
  if (!(c.rank_tol > 0.0) || !std::isfinite(c.rank_tol)) throw ConfigError("--rank-tol must be positive");
  if (c.r_grid.empty()) throw ConfigError("--r-grid must not be empty");
  for (double r : c.r_grid)
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("--r-grid values must lie in [0, 1)");
  if (c.jobs < 1) throw ConfigError("--jobs must be >= 1");
}

void validate_shape(const std::vector<int>& n, const std::vector<int>& degrees) {
  if (n.empty()) throw ConfigError("--n: at least one factor is required");
  for (int v : n)
    if (v < 1) throw ConfigError("--n: alphabet sizes must be >= 1");
  if (degrees.size() != n.size()) throw ConfigError("--degrees: expected " + std::to_string(n.size()) + " entries");
  for (int d : degrees)
    if (d < 1) throw ConfigError("--degrees: degenerate truncation, degrees must be >= 1");
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"n", c.n},         {"degrees", c.degrees}, {"max_len", c.max_len}, {"tol", c.tol},
          {"rank_tol", c.rank_tol}, {"seed", c.seed},     {"r_grid", c.r_grid}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << text << '\n';
  if (!out) throw Error("failed writing " + path);
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace polyball::cli
