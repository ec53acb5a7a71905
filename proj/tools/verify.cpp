#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "polyball/berezin.hpp"
#include "polyball/fock.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"
#include "polyball/toeplitz.hpp"

namespace polyball::cli {
namespace {

using Index = Eigen::Index;

int min_degree(const RunConfig& c) { return *std::min_element(c.degrees.begin(), c.degrees.end()); }

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double window_error(const Mat& m, const Window& w, const Mat* expected = nullptr) {
  double err = 0.0;
  for (std::size_t idx : w.indices()) {
    const auto c = static_cast<Index>(idx);
    Vec col = m.col(c);
    if (expected) col -= expected->col(c);
    err = std::max(err, col.cwiseAbs().maxCoeff());
  }
  return err;
}

Mat dense(const SpMat& m) { return Mat(m); }

// Truncation with every degree lowered to at most cap, for checks whose
// cost grows with dense evaluations at the truncation dimension.
TruncationPtr capped_truncation(const RunConfig& c, int cap) {
  std::vector<int> d = c.degrees;
  for (int& v : d) v = std::min(v, cap);
  return make_truncation(c.n, d);
}

PolyballPoint sample_point(Rng& rng, const RunConfig& c, double max_norm, bool nilpotent) {
  PointOptions opt;
  opt.max_row_norm = max_norm;
  opt.min_row_norm = std::min(0.1, max_norm);
  opt.nilpotent = nilpotent;
  return random_point(rng, c.n, opt);
}

MultiToeplitzSymbol sample_symbol(Rng& rng, const RunConfig& c, int max_total, bool hermitian) {
  SymbolOptions opt;
  opt.max_total = max_total;
  opt.hermitian = hermitian;
  return random_symbol(rng, c.n, opt);
}

Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

cplx normal_cplx(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

std::vector<int> unit_budget(std::size_t k, std::initializer_list<std::size_t> factors) {
  std::vector<int> b(k, 0);
  for (std::size_t i : factors) b[i] = 1;
  return b;
}

// Words

CheckOutcome reversal_duality(Rng&, const RunConfig& c) {
  const auto words = multiwords_in_box(c.n, c.degrees, 4);
  double bad = 0.0;
  for (const auto& w : words)
    for (const auto& v : words) {
      const auto r = compare(Side::right, w, v);
      const auto l = compare(Side::left, reverse(w), reverse(v));
      if (r.comparable != l.comparable ||
          (r.comparable && (reverse(r.c_plus) != l.c_plus || reverse(r.c_minus) != l.c_minus)))
        bad += 1.0;
    }
  return {bad, 0.0};
}

CheckOutcome lambda_comparable(Rng&, const RunConfig& c) {
  double bad = 0.0;
  for (const auto& [a, b] : lambda_pairs(c.n, 4, c.degrees)) {
    const auto r = compare(Side::left, a, b);
    if (!r.comparable || r.c_plus != a || r.c_minus != b) bad += 1.0;
  }
  return {bad, 0.0};
}

// Fock

CheckOutcome creation_isometry(Rng&, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  double err = 0.0;
  for (Side side : {Side::left, Side::right})
    for (std::size_t i = 0; i < t->k(); ++i) {
      const Window w = exact_window(t, unit_budget(t->k(), {i}));
      const int fi = static_cast<int>(i) + 1;
      for (int s = 1; s <= c.n[i]; ++s)
        for (int r = 1; r <= c.n[i]; ++r) {
          const Mat prod = dense(creation_matrix(*t, side, fi, r, true) * creation_matrix(*t, side, fi, s));
          const Mat expected = Mat::Identity(prod.rows(), prod.cols()) * (s == r ? 1.0 : 0.0);
          err = std::max(err, window_error(prod, w, &expected));
        }
    }
  return {err, c.tol};
}

CheckOutcome cross_commutation(Rng&, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  double err = 0.0;
  const std::pair<Side, Side> sides[] = {{Side::left, Side::left}, {Side::right, Side::right}, {Side::left, Side::right}};
  for (std::size_t i = 0; i < t->k(); ++i)
    for (std::size_t i2 = 0; i2 < t->k(); ++i2) {
      if (i == i2) continue;
      const Window w = exact_window(t, unit_budget(t->k(), {i, i2}));
      for (const auto& [s1, s2] : sides)
        for (int j = 1; j <= c.n[i]; ++j)
          for (int j2 = 1; j2 <= c.n[i2]; ++j2) {
            const SpMat a = creation_matrix(*t, s1, static_cast<int>(i) + 1, j);
            const SpMat b = creation_matrix(*t, s2, static_cast<int>(i2) + 1, j2);
            err = std::max(err, window_error(dense(a * b - b * a), w));
          }
    }
  return {err, c.tol};
}

CheckOutcome adjoint_consistency(Rng&, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  double err = 0.0;
  for (Side side : {Side::left, Side::right})
    for (std::size_t i = 0; i < t->k(); ++i)
      for (int j = 1; j <= c.n[i]; ++j) {
        const int fi = static_cast<int>(i) + 1;
        const Mat adj = dense(creation_matrix(*t, side, fi, j, true));
        const Mat fwd = dense(creation_matrix(*t, side, fi, j));
        err = std::max(err, max_abs(adj - fwd.adjoint()));
      }
  return {err, 0.0};
}

// Toeplitz

double symbol_distance(const MultiToeplitzSymbol& a, const MultiToeplitzSymbol& b) {
  std::set<LambdaPair> keys;
  for (const auto& [k, v] : a.coeffs()) keys.insert(k);
  for (const auto& [k, v] : b.coeffs()) keys.insert(k);
  double err = 0.0;
  for (const auto& [p, q] : keys) err = std::max(err, max_abs(a.at(p, q) - b.at(p, q)));
  return err;
}

CheckOutcome fourier_roundtrip(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const int total = std::min(2, min_degree(c));
  const auto sym = sample_symbol(rng, c, total, false);
  const auto back = extract_symbol(symbol_operator(sym, t), total);
  return {symbol_distance(sym, back), c.tol};
}

// Analytic polynomial with random coefficients on words of total length <= 2.
MultiToeplitzSymbol analytic_polynomial(Rng& rng, const std::vector<int>& n) {
  MultiToeplitzSymbol p(n, 1);
  const auto g = MultiWord::identity(n);
  for (const auto& w : multiwords_in_box(n, std::vector<int>(n.size(), 1), 2)) p.set(w, g, scalar(normal_cplx(rng)));
  return p;
}

CheckOutcome span_closure(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  std::vector<int> big_deg = c.degrees;
  for (int& d : big_deg) d += 1;
  const auto big = make_truncation(c.n, big_deg);
  const SpMat p = symbol_operator(analytic_polynomial(rng, c.n), big).matrix;
  const SpMat q = symbol_operator(analytic_polynomial(rng, c.n), big).matrix;
  const Mat prod = dense(SpMat(p.adjoint()) * q);
  std::vector<Index> map(t->dim());
  for (std::size_t i = 0; i < t->dim(); ++i) map[i] = static_cast<Index>(big->index(t->word(i)));
  const auto d = static_cast<Index>(t->dim());
  Mat small(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index s = 0; s < d; ++s) small(r, s) = prod(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(s)]);
  FockOperator op;
  op.truncation = t;
  op.matrix = small.sparseView();
  return {is_k_multi_toeplitz(op, c.tol).max_violation, c.tol};
}

CheckOutcome norm_monotonicity(Rng& rng, const RunConfig& c) {
  const auto t = capped_truncation(c, 3);
  const auto sym = sample_symbol(rng, c, std::min(2, min_degree(c)), false);
  double prev = 0.0, drop = 0.0;
  for (int s = 1; s <= 9; ++s) {
    const double norm = spectral_norm(symbol_operator(sym, t, 0.1 * s).dense());
    drop = std::max(drop, prev - norm);
    prev = norm;
  }
  return {drop, 1e-9};
}

// Berezin

CheckOutcome moments(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const auto x = sample_point(rng, c, 0.6, false);
  const auto kernel = berezin_kernel(x, t);
  const auto words = multiwords_in_box(c.n, c.degrees, 3);
  double excess = 0.0;
  for (const auto& a : words)
    for (const auto& b : words) {
      if (a.total_length() + b.total_length() > 3) continue;
      const Mat lhs = berezin_transform(word_operator(t, a, b, Mat::Identity(1, 1)), kernel);
      const double err = spectral_norm(lhs - x.monomial(a) * x.monomial(b).adjoint());
      excess = std::max(excess, err - std::max(c.tol, moment_tail_bound(x, *t, a, b)));
    }
  return {excess, 0.0};
}

CheckOutcome kernel_isometry(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const auto x = sample_point(rng, c, 0.9, true);
  const Mat k = berezin_kernel(x, t).matrix();
  return {spectral_norm(k.adjoint() * k - Mat::Identity(k.cols(), k.cols())), c.tol};
}

CheckOutcome intertwining(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const auto x = sample_point(rng, c, 0.9, true);
  const Mat k = berezin_kernel(x, t).matrix();
  double err = 0.0;
  for (std::size_t i = 0; i < x.k(); ++i)
    for (int j = 1; j <= c.n[i]; ++j) {
      const int fi = static_cast<int>(i) + 1;
      const Mat lifted = dense(lift(creation_matrix(*t, Side::left, fi, j, true), x.h_dim()));
      err = std::max(err, spectral_norm(k * x(fi, j).adjoint() - lifted * k));
    }
  return {err, c.tol};
}

CheckOutcome complete_positivity(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const auto x = sample_point(rng, c, 0.6, false);
  const auto d = static_cast<Index>(t->dim());
  const Mat a = random_matrix(rng, d, d);
  Mat g = a * a.adjoint();
  g /= spectral_norm(g);
  FockOperator op;
  op.truncation = t;
  op.matrix = g.sparseView();
  const Mat b = berezin_transform(op, x);
  return {std::max(0.0, -min_eigenvalue((b + b.adjoint()) / 2.0)), c.tol};
}

CheckOutcome defect_order(Rng& rng, const RunConfig& c) {
  const auto x = sample_point(rng, c, 0.6, false);
  const Mat id = Mat::Identity(static_cast<Index>(x.h_dim()), static_cast<Index>(x.h_dim()));
  std::vector<std::size_t> order(x.k());
  std::iota(order.begin(), order.end(), 0);
  const Mat base = apply_defect(x, id, order);
  double err = 0.0;
  while (std::next_permutation(order.begin(), order.end()))
    err = std::max(err, spectral_norm(apply_defect(x, id, order) - base));
  return {err, c.tol};
}

CheckOutcome radius_bound(Rng& rng, const RunConfig& c) {
  const auto x = sample_point(rng, c, 0.9, false);
  const auto norms = x.row_norms();
  const double top = *std::max_element(norms.begin(), norms.end());
  double err = std::max(0.0, spectral_radius(x, 12).value - top);
  const auto t = capped_truncation(c, 2);
  err = std::max(err, spectral_radius(PolyballPoint::shifts(*t, 0.5), 12).value - 0.5);
  return {err, c.tol};
}

// Naimark

CheckOutcome dilation(Rng& rng, const RunConfig& c) {
  const auto gen = random_psd_left_generator(rng, c.n, 1, 2 * c.max_len);
  const auto k = kernel_from_generator(Side::left, c.n, 1, gen, c.max_len);
  const auto d = naimark_dilate(k, c.rank_tol);
  const auto rep = dilation_verify(d, k, c.rank_tol);
  double err = std::max(rep.reproduction_error, rep.commutator_norm);
  for (double v : rep.isometry_defect) err = std::max(err, v);
  return {err, c.tol};
}

CheckOutcome refusal(Rng& rng, const RunConfig& c) {
  const auto gen = random_psd_left_generator(rng, c.n, 1, 2 * c.max_len);
  const auto bad = break_positivity(rng, gen, c.n, 1, c.max_len);
  try {
    naimark_dilate(kernel_from_generator(Side::left, c.n, 1, bad, c.max_len), c.rank_tol);
  } catch (const PsdError&) {
    return {0.0, 0.0};
  }
  return {1.0, 0.0};
}

CheckOutcome reversal_dilation(Rng& rng, const RunConfig& c) {
  const auto gen = random_psd_left_generator(rng, c.n, 1, 2 * c.max_len);
  const auto right = kernel_from_generator(Side::right, c.n, 1, gen, c.max_len);
  const auto left = right.reversed();
  const auto dr = naimark_dilate(right, c.rank_tol);
  const auto dl = naimark_dilate(left, c.rank_tol);
  double err = std::max(dilation_verify(dr, right, c.rank_tol).reproduction_error,
                        dilation_verify(dl, left, c.rank_tol).reproduction_error);
  // Right kernel read off the left dilation: Gamma(s,w) = E^* V_{~s}^* V_{~w} E.
  for (const auto& s : right.words()) {
    const Mat vs = dl.apply_word(reverse(s), dl.embedding);
    for (const auto& w : right.words()) {
      const Mat vw = dl.apply_word(reverse(w), dl.embedding);
      err = std::max(err, max_abs(vs.adjoint() * vw - right.value(s, w)));
    }
  }
  return {err, c.tol};
}

// Pluriharmonic

CheckOutcome schur_equivalence(Rng& rng, const RunConfig& c) {
  const auto t = capped_truncation(c, 3);
  const auto f = sample_symbol(rng, c, std::min(3, min_degree(c)), true);
  const auto rep = schur_positivity(f, c.r_grid, t, c.tol);
  double err = rep.agree ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& p : rep.points) err = std::max(err, std::abs(p.operator_min_eig - p.kernel_min_eig));
  return {err, c.tol};
}

CheckOutcome structure_positivity(Rng& rng, const RunConfig& c) {
  const auto t = capped_truncation(c, 3);
  const int low = std::min(3, min_degree(c));
  const int support = low >= 2 ? 1 : 0;
  const int total = std::min(2, low - support);
  std::vector<std::vector<Mat>> v(t->k());
  for (std::size_t i = 0; i < t->k(); ++i)
    for (int j = 1; j <= c.n[i]; ++j) v[i].push_back(dense(creation_matrix(*t, Side::right, static_cast<int>(i) + 1, j)));
  Mat e = Mat::Zero(static_cast<Index>(t->dim()), 1);
  for (const auto& w : multiwords_in_box(c.n, std::vector<int>(c.n.size(), support), support))
    e(static_cast<Index>(t->index(w)), 0) = normal_cplx(rng);
  e /= e.norm();
  const auto f = from_row_isometries(v, e, total);
  const auto rep = schur_positivity(f, c.r_grid, t, c.tol);
  double err = 0.0;
  for (const auto& p : rep.points) err = std::max({err, -p.operator_min_eig, -p.kernel_min_eig});
  return {err, c.tol};
}

SeriesOptions series(const RunConfig& c) {
  SeriesOptions opt;
  opt.tol = c.tol * 0.1;
  return opt;
}

CheckOutcome herglotz_real_part(Rng& rng, const RunConfig& c) {
  const auto g = MultiWord::identity(c.n);
  CoeffMap values;
  for (const auto& a : multiwords_in_box(c.n, std::vector<int>(c.n.size(), 2), 2)) {
    if (a.is_identity()) continue;
    const cplx z = 0.2 * normal_cplx(rng);
    values[{a, g}] = scalar(z);
    values[{g, a}] = scalar(std::conj(z));
  }
  const CbMapData mu(c.n, 1, Mat::Identity(1, 1), values, true);
  const auto x = sample_point(rng, c, 0.5, false);
  const auto h = herglotz_transform(mu, x, series(c));
  const auto p = poisson_transform(mu, x, series(c));
  const Mat re = (h.value + h.value.adjoint()) / 2.0;
  return {spectral_norm(re - p.value), c.tol + h.tail_bound + p.tail_bound};
}

CheckOutcome point_mass_classical(Rng&, const RunConfig& c) {
  std::vector<std::vector<cplx>> zeta(c.n.size()), z(c.n.size());
  double expected = 1.0;
  for (std::size_t i = 0; i < c.n.size(); ++i) {
    const double r = c.n[i] == 1 ? 0.5 : 0.02;
    expected *= (1.0 + r) / (1.0 - r);
    for (int j = 0; j < c.n[i]; ++j) {
      zeta[i].push_back(1.0 / std::sqrt(static_cast<double>(c.n[i])));
      z[i].push_back(r * zeta[i].back());
    }
  }
  const auto p = poisson_transform(CbMapData::point_mass(zeta), PolyballPoint::scalars(z), series(c));
  return {std::abs(p.value(0, 0) - expected), c.tol + p.tail_bound};
}

CheckOutcome bounded_correspondence(Rng& rng, const RunConfig& c) {
  const auto t = make_truncation(c.n, c.degrees);
  const auto sym = sample_symbol(rng, c, std::min(2, min_degree(c)), false);
  const auto x = sample_point(rng, c, 0.9, true);
  const Mat lhs = evaluate_symbol(sym, x);
  const Mat rhs = berezin_transform(symbol_operator(sym, t), x);
  return {spectral_norm(lhs - rhs), c.tol};
}

CheckOutcome nu_forms(Rng& rng, const RunConfig& c) {
  const auto f = sample_symbol(rng, c, std::min(2, min_degree(c)), true);
  const auto a = nu_of(f, 0.7);
  const auto b = nu_trace_form(f, 0.7);
  std::set<LambdaPair> keys;
  for (const auto& [k, v] : a.values()) keys.insert(k);
  for (const auto& [k, v] : b.values()) keys.insert(k);
  double err = max_abs(a.unit() - b.unit());
  for (const auto& [p, q] : keys) err = std::max(err, max_abs(a.value(p, q) - b.value(p, q)));
  return {err, c.tol};
}

CheckResult run_one(const Check& check, const RunConfig& cfg, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  Rng rng(seq);
  CheckResult r;
  r.name = check.name;
  r.paper_anchor = check.paper_anchor;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto out = check.run(rng, cfg);
    r.max_error = out.max_error;
    r.tolerance = out.tolerance;
    r.pass = std::isfinite(out.max_error) && out.max_error <= out.tolerance;
  } catch (const std::exception& e) {
    r.max_error = std::numeric_limits<double>::infinity();
    r.error = e.what();
  }
  const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
  spdlog::debug("{}: max_error {:.3e} tolerance {:.3e} ({:.2f}s)", r.name, r.max_error, r.tolerance, secs.count());
  if (!r.pass) spdlog::warn("{} failed{}{}", r.name, r.error.empty() ? "" : ": ", r.error);
  return r;
}

}  // namespace

std::vector<Check> verification_suite() {
  return {
      {"words.reversal_duality", "Comparability under word reversal", reversal_duality},
      {"words.lambda_comparable", "Lambda pairs are left comparable", lambda_comparable},
      {"fock.creation_isometry", "Creation operators are isometries with orthogonal ranges", creation_isometry},
      {"fock.cross_commutation", "Ampliated creation operators commute across factors", cross_commutation},
      {"fock.adjoint_consistency", "Adjoint creation operators", adjoint_consistency},
      {"toeplitz.fourier_roundtrip", "Theorem Fourier", fourier_roundtrip},
      {"toeplitz.span_closure", "Theorem characterization", span_closure},
      {"toeplitz.norm_monotonicity", "Theorem structure-Toeplitz", norm_monotonicity},
      {"berezin.moments_within_tail", "Berezin transform moment identity", moments},
      {"berezin.kernel_isometry", "Corollary Fatou", kernel_isometry},
      {"berezin.intertwining", "Berezin kernel intertwining", intertwining},
      {"berezin.complete_positivity", "Berezin transform complete positivity", complete_positivity},
      {"berezin.defect_order", "Defect map order independence", defect_order},
      {"berezin.spectral_radius_bound", "Joint spectral radius bound", radius_bound},
      {"naimark.dilation", "Theorem Naimark", dilation},
      {"naimark.refusal", "Theorem Naimark", refusal},
      {"naimark.reversal_duality", "Theorem Naimark2", reversal_dilation},
      {"pluriharm.schur_equivalence", "Theorem pluri-positive", schur_equivalence},
      {"pluriharm.structure_positivity", "Theorem pluri-structure", structure_positivity},
      {"pluriharm.herglotz_real_part", "Theorem Herglotz", herglotz_real_part},
      {"pluriharm.point_mass_poisson", "Poisson transform of point evaluation", point_mass_classical},
      {"pluriharm.bounded_correspondence", "Theorem bounded", bounded_correspondence},
      {"pluriharm.nu_trace_form", "Theorem pluri-positive", nu_forms},
  };
}

std::vector<CheckResult> run_suite(const std::vector<Check>& suite, const RunConfig& cfg) {
  std::vector<CheckResult> results(suite.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.size(); i = next++) results[i] = run_one(suite[i], cfg, i);
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), suite.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j{{"name", r.name},
                   {"paper_anchor", r.paper_anchor},
                   {"max_error", r.max_error},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace polyball::cli
