#include "polyball/io.hpp"

#include <algorithm>
#include <tuple>

#include "json.hpp"

namespace polyball::io {

namespace {

using json = nlohmann::json;
using Index = Eigen::Index;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

json mat_json(const Mat& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      out.push_back(m(r, c).real());
      out.push_back(m(r, c).imag());
    }
  return out;
}

Mat mat_from(const json& j, Index rows, Index cols) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(2 * rows * cols))
    throw ConfigError("matrix must be a flat array of " + std::to_string(2 * rows * cols) + " numbers");
  Mat m(rows, cols);
  std::size_t p = 0;
  try {
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c, p += 2) m(r, c) = cplx(j[p].get<double>(), j[p + 1].get<double>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad matrix entry: ") + e.what());
  }
  return m;
}

json word_json(const MultiWord& w) {
  json out = json::array();
  for (const auto& part : w.parts()) out.push_back(part.letters());
  return out;
}

MultiWord word_from(const json& j, const std::vector<int>& n) {
  if (!j.is_array() || j.size() != n.size()) throw ConfigError("multiword must list one letter array per factor");
  std::vector<Word> parts;
  try {
    for (std::size_t i = 0; i < n.size(); ++i) parts.emplace_back(n[i], j[i].get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad multiword: ") + e.what());
  }
  return MultiWord(std::move(parts));
}

json coeffs_json(const CoeffMap& c, const char* value_key) {
  json out = json::array();
  for (const auto& [key, m] : c)
    out.push_back({{"alpha", word_json(key.first)}, {"beta", word_json(key.second)}, {value_key, mat_json(m)}});
  return out;
}

CoeffMap coeffs_from(const json& j, const std::vector<int>& n, Index e) {
  if (!j.is_array()) throw ConfigError("coefficient list must be an array");
  CoeffMap out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("alpha") || !item.contains("beta") || !item.contains("matrix"))
      throw ConfigError("coefficient entries need 'alpha', 'beta' and 'matrix'");
    const MultiWord a = word_from(item.at("alpha"), n);
    const MultiWord b = word_from(item.at("beta"), n);
    if (!out.emplace(LambdaPair{a, b}, mat_from(item.at("matrix"), e, e)).second)
      throw ConfigError("duplicate coefficient (" + a.str() + "; " + b.str() + ")");
  }
  return out;
}

std::vector<int> shape_from(const json& j) {
  const auto n = field<std::vector<int>>(j, "n");
  if (n.empty()) throw ConfigError("n must be non-empty");
  for (int ni : n)
    if (ni < 1) throw ConfigError("every n_i must be >= 1");
  return n;
}

Index positive_dim(const json& j, const char* key) {
  const auto v = field<long>(j, key);
  if (v < 1) throw ConfigError(std::string(key) + " must be >= 1");
  return static_cast<Index>(v);
}

}  // namespace

std::string matrix_to_json(const Mat& m) { return mat_json(m).dump(); }

Mat matrix_from_json(const std::string& text, Index rows, Index cols) { return mat_from(parse(text), rows, cols); }

std::string multiword_to_json(const MultiWord& w) { return word_json(w).dump(); }

MultiWord multiword_from_json(const std::string& text, const std::vector<int>& n) { return word_from(parse(text), n); }

std::string to_json(const PolyballPoint& x) {
  json rows = json::array();
  for (const auto& row : x.rows()) {
    json r = json::array();
    for (const auto& m : row) r.push_back(mat_json(m));
    rows.push_back(r);
  }
  return json{{"n", x.n()}, {"h_dim", x.h_dim()}, {"X", rows}}.dump();
}

PolyballPoint point_from_json(const std::string& text) {
  const json j = parse(text);
  const auto n = shape_from(j);
  const Index h = positive_dim(j, "h_dim");
  const json& xs = j.contains("X") ? j.at("X") : json();
  if (!xs.is_array() || xs.size() != n.size()) throw ConfigError("X must list one row per factor");
  std::vector<std::vector<Mat>> x(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!xs[i].is_array() || xs[i].size() != static_cast<std::size_t>(n[i]))
      throw ConfigError("factor " + std::to_string(i + 1) + " must list n_i matrices");
    for (const auto& m : xs[i]) x[i].push_back(mat_from(m, h, h));
  }
  return PolyballPoint(std::move(x));
}

std::string to_json(const ToeplitzKernel& k) {
  return json{{"side", k.side() == Side::left ? "left" : "right"},
              {"n", k.n()},
              {"e_dim", k.e_dim()},
              {"max_len", k.max_len()},
              {"caps", k.caps()},
              {"generator", coeffs_json(k.generator(), "matrix")}}
      .dump();
}

ToeplitzKernel kernel_from_json(const std::string& text) {
  const json j = parse(text);
  const auto side = field<std::string>(j, "side");
  if (side != "left" && side != "right") throw ConfigError("side must be 'left' or 'right'");
  const auto n = shape_from(j);
  const Index e = positive_dim(j, "e_dim");
  const auto max_len = field<int>(j, "max_len");
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  std::vector<int> caps;
  if (j.contains("caps")) caps = field<std::vector<int>>(j, "caps");
  return kernel_from_generator(side == "left" ? Side::left : Side::right, n, static_cast<std::size_t>(e),
                               coeffs_from(j.contains("generator") ? j.at("generator") : json(), n, e), max_len,
                               caps);
}

std::string to_json(const MultiToeplitzSymbol& s) {
  return json{{"n", s.n()}, {"e_dim", s.e_dim()}, {"coeffs", coeffs_json(s.coeffs(), "matrix")}}.dump();
}

MultiToeplitzSymbol symbol_from_json(const std::string& text) {
  const json j = parse(text);
  const auto n = shape_from(j);
  const Index e = positive_dim(j, "e_dim");
  MultiToeplitzSymbol s(n, static_cast<std::size_t>(e));
  for (const auto& [key, m] : coeffs_from(j.contains("coeffs") ? j.at("coeffs") : json(), n, e))
    s.set(key.first, key.second, m);
  return s;
}

std::string to_json(const CbMapData& mu) {
  if (mu.is_family()) throw ConfigError("family maps are described by name, not serialized");
  return json{{"n", mu.n()},
              {"e_dim", mu.e_dim()},
              {"unit", mat_json(mu.unit())},
              {"herglotz_class", mu.herglotz_class()},
              {"coeffs", coeffs_json(mu.values(), "matrix")}}
      .dump();
}

CbMapData cbmap_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.is_object() && j.contains("family")) {
    const auto fam = field<std::string>(j, "family");
    if (fam == "vacuum") return CbMapData::vacuum_state(shape_from(j), static_cast<std::size_t>(positive_dim(j, "e_dim")));
    if (fam == "point_mass") {
      const auto z = field<std::vector<std::vector<double>>>(j, "zeta");
      std::vector<std::vector<cplx>> zeta;
      for (const auto& row : z) {
        if (row.empty() || row.size() % 2 != 0) throw ConfigError("zeta rows are interleaved re/im pairs");
        std::vector<cplx> r;
        for (std::size_t p = 0; p < row.size(); p += 2) r.emplace_back(row[p], row[p + 1]);
        zeta.push_back(std::move(r));
      }
      return CbMapData::point_mass(zeta);
    }
    throw ConfigError("unknown family '" + fam + "'");
  }
  const auto n = shape_from(j);
  const Index e = positive_dim(j, "e_dim");
  const bool herglotz = j.contains("herglotz_class") ? field<bool>(j, "herglotz_class") : false;
  if (!j.contains("unit")) throw ConfigError("missing field 'unit'");
  return CbMapData(n, static_cast<std::size_t>(e), mat_from(j.at("unit"), e, e),
                   coeffs_from(j.contains("coeffs") ? j.at("coeffs") : json::array(), n, e), herglotz);
}

std::string to_json(const FockOperator& op) {
  std::vector<std::tuple<Index, Index, cplx>> entries;
  for (Index c = 0; c < op.matrix.outerSize(); ++c)
    for (SpMat::InnerIterator it(op.matrix, c); it; ++it) entries.emplace_back(it.row(), it.col(), it.value());
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  json e = json::array();
  for (const auto& [r, c, v] : entries) e.push_back({r, c, v.real(), v.imag()});
  return json{{"n", op.truncation->n()},
              {"degrees", op.truncation->degrees()},
              {"coeff_dim", op.coeff_dim},
              {"entries", e}}
      .dump();
}

FockOperator operator_from_json(const std::string& text) {
  const json j = parse(text);
  FockOperator op;
  op.truncation = make_truncation(shape_from(j), field<std::vector<int>>(j, "degrees"));
  op.coeff_dim = static_cast<std::size_t>(positive_dim(j, "coeff_dim"));
  const auto size = static_cast<Index>(op.size());
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const auto& entry : field<std::vector<std::vector<double>>>(j, "entries")) {
    if (entry.size() != 4) throw ConfigError("operator entries are [row, col, re, im]");
    const auto r = static_cast<Index>(entry[0]);
    const auto c = static_cast<Index>(entry[1]);
    if (r < 0 || c < 0 || r >= size || c >= size || entry[0] != static_cast<double>(r) ||
        entry[1] != static_cast<double>(c))
      throw ConfigError("operator entry index out of range");
    trips.emplace_back(r, c, cplx(entry[2], entry[3]));
  }
  op.matrix = SpMat(size, size);
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  return op;
}

std::string to_json(const NaimarkDilation& d) {
  json v = json::array();
  for (const auto& row : d.v) {
    json r = json::array();
    for (const auto& m : row) r.push_back(mat_json(m));
    v.push_back(r);
  }
  return json{{"side", d.side == Side::left ? "left" : "right"},
              {"n", d.n},
              {"e_dim", d.e_dim},
              {"space_dim", d.space_dim},
              {"max_len", d.max_len},
              {"window_len", d.window_len},
              {"discarded_eigenvalue", d.discarded_eig},
              {"embedding", mat_json(d.embedding)},
              {"V", v}}
      .dump();
}

std::string to_json(const DilationReport& r) {
  return json{{"reproduction_error", r.reproduction_error},
              {"isometry_defect", r.isometry_defect},
              {"commutator_norm", r.commutator_norm},
              {"embedding_defect", r.embedding_defect},
              {"span_dim", r.span_dim},
              {"space_dim", r.space_dim},
              {"dimension_gap", r.dimension_gap},
              {"minimal", r.minimal}}
      .dump();
}

}  // namespace polyball::io
