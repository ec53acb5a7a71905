#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "polyball/sampling.hpp"

namespace polyball::cli {

struct CheckOutcome {
  double max_error = 0.0;
  double tolerance = 0.0;
};

struct Check {
  std::string name;
  std::string paper_anchor;
  std::function<CheckOutcome(Rng&, const RunConfig&)> run;
};

struct CheckResult {
  std::string name;
  std::string paper_anchor;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;
};

std::vector<Check> verification_suite();

// Runs every check on up to cfg.jobs threads. Check i draws from an RNG
// seeded with (cfg.seed, i), so results do not depend on the thread count.
std::vector<CheckResult> run_suite(const std::vector<Check>& suite, const RunConfig& cfg);

nlohmann::json to_json(const CheckResult& r);

}  // namespace polyball::cli
