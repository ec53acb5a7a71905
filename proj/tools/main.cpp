#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "config.hpp"
#include "polyball/types.hpp"

namespace {

using namespace polyball;
using namespace polyball::cli;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPsd = 3;
constexpr int kExitDomain = 4;

// POLYBALL_LOG: trace, debug, info, warn, error, critical or off.
void configure_logging() {
  auto logger = spdlog::stderr_color_mt("polyball");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("POLYBALL_LOG");
  if (!env || !*env) return;
  const std::string name(env);
  const auto level = spdlog::level::from_str(name);
  if (level == spdlog::level::off && name != "off") {
    spdlog::warn("ignoring unknown POLYBALL_LOG level '{}'", name);
    return;
  }
  spdlog::set_level(level);
}

struct Flags {
  std::optional<std::string> n, degrees, r_grid;
  std::optional<int> max_len;
  RunConfig cfg;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "alphabet size per factor, comma separated");
  sub->add_option("--degrees", f.degrees, "truncation degree per factor, comma separated");
  sub->add_option("--max-len", f.max_len, "kernel word length bound");
  sub->add_option("--tol", f.cfg.tol, "identity and series tolerance")->capture_default_str();
  sub->add_option("--rank-tol", f.cfg.rank_tol, "rank and PSD tolerance")->capture_default_str();
  sub->add_option("--seed", f.cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--r-grid", f.r_grid, "radii in [0,1), comma separated");
  sub->add_option("--jobs", f.cfg.jobs, "worker threads for verify")->capture_default_str();
  sub->add_option("--output", f.cfg.output, "output file, stdout when omitted");
}

RunConfig resolve(Flags& f, bool check_shape) {
  RunConfig c = f.cfg;
  if (f.n) {
    c.n = parse_int_list(*f.n, "--n");
    c.n_set = true;
  }
  if (f.degrees) {
    c.degrees = parse_int_list(*f.degrees, "--degrees");
    c.degrees_set = true;
  }
  if (f.max_len) {
    c.max_len = *f.max_len;
    c.max_len_set = true;
  }
  if (f.r_grid) c.r_grid = parse_real_list(*f.r_grid, "--r-grid");
  validate(c, check_shape);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Operator theory on free polyballs: identity checks, Naimark dilations and transforms"};
  app.require_subcommand(1);

  Flags flags;
  std::string kernel_path, kind, inputs_path;

  auto* verify = app.add_subcommand("verify", "run the identity suite and write a JSON report");
  add_flags(verify, flags);

  auto* dilate = app.add_subcommand("dilate", "dilate a positive semidefinite multi-Toeplitz kernel");
  dilate->add_option("kernel", kernel_path, "kernel JSON file")->required()->check(CLI::ExistingFile);
  add_flags(dilate, flags);

  auto* transform = app.add_subcommand("transform", "evaluate a transform at a polyball point");
  transform->add_option("kind", kind, "berezin, poisson, herglotz or fantappie")
      ->required()
      ->check(CLI::IsMember({"berezin", "poisson", "herglotz", "fantappie"}));
  transform->add_option("inputs", inputs_path, "input JSON file")->required()->check(CLI::ExistingFile);
  add_flags(transform, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify(resolve(flags, true));
    if (dilate->parsed()) return cmd_dilate(kernel_path, resolve(flags, false));
    return cmd_transform(kind, inputs_path, resolve(flags, false));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PsdError& e) {
    std::cerr << "psd failure: " << e.what() << " (min eigenvalue " << e.min_eig() << ")\n";
    return kExitPsd;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
