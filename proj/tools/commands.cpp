#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "polyball/berezin.hpp"
#include "polyball/io.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"
#include "verify.hpp"

namespace polyball::cli {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& what) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(what + ": missing field '" + key + "'");
  return obj.at(key);
}

// Shortest decimal text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json matrix_json(const Mat& m) { return json::parse(io::matrix_to_json(m)); }

struct Evaluation {
  Mat value;
  double tail_bound = 0.0;
  std::vector<int> degrees;
};

std::string format_norms(const std::vector<double>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

void require_member(const PolyballPoint& x) {
  const auto m = in_polyball(x);
  if (m.member) return;
  std::ostringstream msg;
  msg << "point is not in the open polyball (row norms " << format_norms(m.row_norms) << ", defect min eigenvalue "
      << m.defect_min_eig << ", commutator norm " << m.commutator_norm << ")";
  throw DomainError(msg.str());
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
  const auto suite = verification_suite();
  spdlog::info("running {} checks on {} thread(s)", suite.size(), cfg.jobs);
  const auto results = run_suite(suite, cfg);
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    checks.push_back(to_json(r));
    passed += r.pass ? 1 : 0;
  }
  const bool ok = passed == results.size();
  const json report{{"command", "verify"}, {"timestamp", timestamp()}, {"config", to_json(cfg)},
                    {"checks", checks},     {"passed", passed},         {"total", results.size()},
                    {"pass", ok}};
  write_output(cfg.output, report.dump(2));
  spdlog::info("{}/{} checks passed", passed, results.size());
  return ok ? 0 : 1;
}

int cmd_dilate(const std::string& kernel_path, const RunConfig& cfg) {
  auto kernel = io::kernel_from_json(read_file(kernel_path));
  if (cfg.max_len_set && cfg.max_len != kernel.max_len())
    kernel = kernel_from_generator(kernel.side(), kernel.n(), kernel.e_dim(), kernel.generator(), cfg.max_len,
                                   kernel.caps());
  spdlog::info("dilating {} kernel, {} words", kernel.side() == Side::left ? "left" : "right", kernel.words().size());
  const auto psd = kernel_is_psd(kernel, cfg.rank_tol);
  const auto d = naimark_dilate(kernel, cfg.rank_tol, cfg.rank_tol);
  const auto report = dilation_verify(d, kernel, cfg.rank_tol);
  const json out{{"command", "dilate"},
                 {"timestamp", timestamp()},
                 {"config", to_json(cfg)},
                 {"kernel_min_eig", psd.min_eig},
                 {"kernel_max_eig", psd.max_eig},
                 {"dilation", json::parse(io::to_json(d))},
                 {"report", json::parse(io::to_json(report))}};
  write_output(cfg.output, out.dump(2));
  spdlog::info("reproduction error {:.3e}, dilation space {}", report.reproduction_error, d.space_dim);
  return 0;
}

int cmd_transform(const std::string& kind, const std::string& inputs_path, const RunConfig& cfg) {
  const json input = parse(read_file(inputs_path), inputs_path);
  const auto x = io::point_from_json(field(input, "point", inputs_path).dump());
  if (cfg.n_set && cfg.n != x.n()) throw ConfigError("--n does not match the point in " + inputs_path);
  if (cfg.degrees_set) validate_shape(x.n(), cfg.degrees);
  require_member(x);

  std::function<Evaluation(const PolyballPoint&)> evaluate;
  if (kind == "berezin") {
    FockOperator op;
    if (input.contains("operator")) {
      op = io::operator_from_json(input.at("operator").dump());
    } else {
      const auto sym = io::symbol_from_json(field(input, "symbol", inputs_path).dump());
      const std::vector<int> degrees = cfg.degrees_set ? cfg.degrees : std::vector<int>(x.k(), 4);
      op = symbol_operator(sym, make_truncation(x.n(), degrees));
    }
    if (op.truncation->n() != x.n()) throw ConfigError("operator shape does not match the point");
    evaluate = [op](const PolyballPoint& p) {
      const auto kernel = berezin_kernel(p, op.truncation);
      return Evaluation{berezin_transform(op, kernel), kernel.tail_bound, op.truncation->degrees()};
    };
  } else {
    const auto mu = io::cbmap_from_json(field(input, "mu", inputs_path).dump());
    if (mu.n() != x.n()) throw ConfigError("linear map shape does not match the point");
    SeriesOptions opt;
    opt.tol = cfg.tol;
    if (cfg.degrees_set) opt.degrees = cfg.degrees;
    using Transform = SeriesValue (*)(const CbMapData&, const PolyballPoint&, const SeriesOptions&);
    Transform fn = nullptr;
    if (kind == "poisson") fn = poisson_transform;
    else if (kind == "herglotz") fn = herglotz_transform;
    else if (kind == "fantappie") fn = fantappie_transform;
    else throw ConfigError("unknown transform '" + kind + "'");
    evaluate = [mu, opt, fn](const PolyballPoint& p) {
      auto v = fn(mu, p, opt);
      return Evaluation{std::move(v.value), v.tail_bound, std::move(v.degrees)};
    };
  }

  const auto result = evaluate(x);
  json out{{"command", "transform"},
           {"kind", kind},
           {"timestamp", timestamp()},
           {"config", to_json(cfg)},
           {"rows", result.value.rows()},
           {"cols", result.value.cols()},
           {"value", matrix_json(result.value)},
           {"tail_bound", result.tail_bound},
           {"degrees", result.degrees}};

  if (x.h_dim() == 1) {
    std::ostringstream csv;
    csv << "r";
    for (Eigen::Index i = 0; i < result.value.rows(); ++i)
      for (Eigen::Index j = 0; j < result.value.cols(); ++j) csv << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
    csv << ",tail_bound\n";
    json grid = json::array();
    for (double r : cfg.r_grid) {
      const auto g = evaluate(x.scaled(r));
      grid.push_back({{"r", r}, {"value", matrix_json(g.value)}, {"tail_bound", g.tail_bound}});
      csv << num(r);
      for (Eigen::Index i = 0; i < g.value.rows(); ++i)
        for (Eigen::Index j = 0; j < g.value.cols(); ++j)
          csv << ',' << num(g.value(i, j).real()) << ',' << num(g.value(i, j).imag());
      csv << ',' << num(g.tail_bound) << '\n';
    }
    out["grid"] = grid;
    if (!cfg.output.empty()) {
      std::filesystem::path path(cfg.output);
      path.replace_extension(".csv");
      if (path == std::filesystem::path(cfg.output)) path += ".grid.csv";
      std::ofstream f(path);
      if (!f) throw ConfigError("cannot open " + path.string());
      f << csv.str();
      out["csv"] = path.string();
    }
  }
  write_output(cfg.output, out.dump(2));
  return 0;
}

}  // namespace polyball::cli
