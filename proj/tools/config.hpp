#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace polyball::cli {

struct RunConfig {
  std::vector<int> n{2, 1};
  std::vector<int> degrees{3, 3};
  // Whether --n / --degrees were given explicitly.
  bool n_set = false;
  bool degrees_set = false;
  int max_len = 3;
  bool max_len_set = false;
  double tol = 1e-8;
  double rank_tol = 1e-10;
  std::uint64_t seed = 7;
  std::vector<double> r_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int jobs = 1;
  std::string output;
};

// Throws ConfigError on the first violated invariant. The n/degrees pair is
// checked only when check_shape is set; transforms take n from their input.
void validate(const RunConfig& c, bool check_shape);
void validate_shape(const std::vector<int>& n, const std::vector<int>& degrees);

nlohmann::json to_json(const RunConfig& c);

// "2,1" -> {2, 1}; throws ConfigError on malformed items.
std::vector<int> parse_int_list(const std::string& text, const std::string& flag);
std::vector<double> parse_real_list(const std::string& text, const std::string& flag);

// Writes text to the output path, or stdout when the path is empty.
void write_output(const std::string& path, const std::string& text);

// Seconds since the epoch in ISO 8601 UTC.
std::string timestamp();

}  // namespace polyball::cli
