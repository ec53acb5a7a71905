#include "polyball/pluriharm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polyball/berezin.hpp"

namespace polyball {

namespace {

using Index = Eigen::Index;

void check_radius(double r, bool closed) {
  if (!(r >= 0.0) || r > 1.0 || (!closed && r >= 1.0))
    throw ConfigError(closed ? "r must lie in [0, 1]" : "r must lie in [0, 1)");
}

// W^* V_{~a}^* V_{~b} W over Lambda pairs, (g0; g0) included.
CoeffMap compression_coeffs(const std::vector<std::vector<Mat>>& v, const Mat& w, int max_total) {
  const PolyballPoint vp(v);
  if (static_cast<std::size_t>(w.rows()) != vp.h_dim()) throw ConfigError("embedding height differs from the space");
  MonomialCache cache(vp);
  std::map<MultiWord, Mat> images;
  auto image = [&](const MultiWord& a) -> const Mat& {
    auto it = images.find(a);
    if (it == images.end()) it = images.emplace(a, cache.monomial(a.reversed()) * w).first;
    return it->second;
  };
  CoeffMap out;
  for (const auto& [a, b] : lambda_pairs(vp.n(), max_total)) out.emplace(LambdaPair{a, b}, image(a).adjoint() * image(b));
  return out;
}

std::size_t total_degree(const std::vector<int>& d) {
  return static_cast<std::size_t>(std::accumulate(d.begin(), d.end(), 0));
}

void require_member(const PolyballPoint& x) {
  const auto m = in_polyball(x);
  if (!m.member) throw DomainError("point is not in the open polyball");
}

enum class SeriesKind { poisson, fantappie };

// Per-factor sums of n^{p/2} s(p): kept part over p = 1..d and the bound on
// p > d. Terms of word length p in factor i number n_i^p and each is
// bounded through ||Phi_i^p(I)||^{1/2}.
struct FactorRates {
  std::vector<std::vector<double>> s;
  std::vector<int> n;

  FactorRates(const PolyballPoint& x, int max_p) : n(x.n()) {
    for (std::size_t i = 0; i < x.k(); ++i) s.push_back(phi_power_roots(x, i, max_p + 1));
  }

  double kept(std::size_t i, int d) const {
    double sum = 0.0;
    for (int p = 1; p <= d; ++p) sum += std::pow(std::sqrt(n[i]), p) * s[i][static_cast<std::size_t>(p)];
    return sum;
  }

  double rest(std::size_t i, int d) const {
    const double next = s[i][static_cast<std::size_t>(d + 1)];
    if (next == 0.0) return 0.0;  // nilpotent from here on
    const double q = std::sqrt(n[i]) * s[i][1];
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(std::sqrt(n[i]), d + 1) * next / (1.0 - q);
  }

  double tail(SeriesKind kind, const std::vector<int>& d, double bound) const {
    const double w = kind == SeriesKind::poisson ? 2.0 : 1.0;
    double full = 1.0, box = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double k = kept(i, d[i]);
      const double r = rest(i, d[i]);
      if (!std::isfinite(r)) return r;
      full *= 1.0 + w * (k + r);
      box *= 1.0 + w * k;
    }
    return bound * std::max(0.0, full - box);
  }

  double terms(SeriesKind kind, const std::vector<int>& d) const {
    double out = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double words = 0.0;
      for (int p = 1; p <= d[i]; ++p) words += std::pow(n[i], p);
      out *= kind == SeriesKind::poisson ? 1.0 + 2.0 * words : 1.0 + words;
    }
    return out;
  }
};

// Degrees and tail bound for a family series, uniform degree chosen from tol
// unless explicit degrees are given.
std::pair<std::vector<int>, double> plan_series(SeriesKind kind, const CbMapData& mu, const PolyballPoint& x,
                                                const SeriesOptions& opt) {
  const std::size_t k = x.k();
  if (!opt.degrees.empty()) {
    if (opt.degrees.size() != k) throw ConfigError("degrees length must equal k");
    for (int d : opt.degrees)
      if (d < 0) throw ConfigError("degrees must be >= 0");
    const FactorRates rates(x, *std::max_element(opt.degrees.begin(), opt.degrees.end()));
    const double tail = rates.tail(kind, opt.degrees, mu.coeff_bound());
    if (!std::isfinite(tail)) throw DomainError("series bound diverges at this point");
    if (rates.terms(kind, opt.degrees) > opt.max_terms) throw DomainError("truncation has too many terms");
    return {opt.degrees, tail};
  }
  if (!(opt.tol > 0.0)) throw ConfigError("tol must be positive");
  const FactorRates rates(x, opt.max_degree);
  // Greedy per-factor degrees: raise the factor whose next degree lowers
  // the bound the most.
  std::vector<int> deg(k, 0);
  double tail = rates.tail(kind, deg, mu.coeff_bound());
  if (!std::isfinite(tail)) throw DomainError("series bound diverges at this point");
  while (tail > opt.tol) {
    std::size_t best = k;
    double best_tail = tail;
    for (std::size_t i = 0; i < k; ++i) {
      if (deg[i] >= opt.max_degree) continue;
      ++deg[i];
      const double t = rates.tail(kind, deg, mu.coeff_bound());
      --deg[i];
      if (best == k || t < best_tail) {
        best = i;
        best_tail = t;
      }
    }
    if (best == k) throw DomainError("tolerance not reached within max_degree");
    ++deg[best];
    if (rates.terms(kind, deg) > opt.max_terms) throw DomainError("tolerance needs more series terms than allowed");
    tail = best_tail;
  }
  return {deg, tail};
}

void add_block(Mat& out, const Mat& coeff, const Mat& term) {
  const Index h = term.rows();
  for (Index p = 0; p < coeff.rows(); ++p)
    for (Index q = 0; q < coeff.cols(); ++q)
      if (coeff(p, q) != cplx(0.0)) out.block(p * h, q * h, h, h) += coeff(p, q) * term;
}

}  // namespace

ToeplitzKernel gamma_kernel(const PluriharmonicFunction& f, double r, int max_len, std::vector<int> caps) {
  check_radius(r, true);
  return ToeplitzKernel(Side::right, f.n(), f.e_dim(), max_len, f.radial(r).coeffs(), std::move(caps));
}

SchurReport schur_positivity(const PluriharmonicFunction& f, const std::vector<double>& r_grid,
                             const TruncationPtr& t, double tol) {
  if (t->n() != f.n()) throw ConfigError("truncation shape does not match the function");
  SchurReport rep;
  const int box_total = static_cast<int>(total_degree(t->degrees()));
  for (double r : r_grid) {
    check_radius(r, false);
    SchurPoint pt;
    pt.r = r;
    const Mat op = symbol_operator(f, t, r).dense();
    pt.operator_min_eig = min_eigenvalue(0.5 * (op + op.adjoint()));
    pt.kernel_min_eig = kernel_is_psd(gamma_kernel(f, r, box_total, t->degrees()), tol).min_eig;
    pt.operator_positive = pt.operator_min_eig >= -tol;
    pt.kernel_positive = pt.kernel_min_eig >= -tol;
    rep.agree = rep.agree && pt.operator_positive == pt.kernel_positive;
    rep.positive = rep.positive && pt.operator_positive && pt.kernel_positive;
    rep.points.push_back(pt);
  }
  return rep;
}

PluriharmonicFunction from_row_isometries(const std::vector<std::vector<Mat>>& v, const Mat& e_basis,
                                          int max_total, double comm_tol) {
  const PolyballPoint vp(v);
  if (vp.cross_commutator_norm() > comm_tol) throw ConfigError("row isometries do not commute across factors");
  const Index e = e_basis.cols();
  if (e == 0) throw ConfigError("E basis is empty");
  if ((e_basis.adjoint() * e_basis - Mat::Identity(e, e)).cwiseAbs().maxCoeff() > 1e-10)
    throw ConfigError("E basis columns are not orthonormal");
  PluriharmonicFunction f(vp.n(), static_cast<std::size_t>(e));
  for (const auto& [key, m] : compression_coeffs(v, e_basis, max_total)) f.set(key.first, key.second, m);
  return f;
}

Mat imag_at_zero(const PluriharmonicFunction& f) {
  const MultiWord id = MultiWord::identity(f.n());
  const Mat a = f.at(id, id);
  return (a - a.adjoint()) / cplx(0.0, 2.0);
}

CbMapData::CbMapData(std::vector<int> n, std::size_t e_dim, Mat unit, CoeffMap values, bool herglotz_class)
    : n_(std::move(n)), e_dim_(e_dim), unit_(std::move(unit)), herglotz_(herglotz_class) {
  if (n_.empty()) throw ConfigError("map needs k >= 1");
  if (e_dim_ == 0) throw ConfigError("map coefficient dimension must be >= 1");
  const auto e = static_cast<Index>(e_dim_);
  if (unit_.rows() != e || unit_.cols() != e) throw ConfigError("unit value has wrong size");
  const MultiWord id = MultiWord::identity(n_);
  for (auto& [key, m] : values) {
    if (key.first.shape() != n_ || key.second.shape() != n_) throw ConfigError("map key shape mismatch");
    if (!lambda_membership(key.first, key.second))
      throw ConfigError("(" + key.first.str() + "; " + key.second.str() + ") is not a Lambda pair");
    if (m.rows() != e || m.cols() != e) throw ConfigError("map value has wrong size");
    if (key.first == id && key.second == id) {
      if ((m - unit_).cwiseAbs().maxCoeff() > 1e-12) throw ConfigError("value at (g0; g0) disagrees with unit");
      continue;
    }
    if (herglotz_ && !key.first.is_identity() && !key.second.is_identity()) {
      const double scale = std::max(1.0, unit_.cwiseAbs().maxCoeff());
      if (m.cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ConfigError("Herglotz-class map is nonzero at (" + key.first.str() + "; " + key.second.str() + ")");
      continue;
    }
    values_.emplace(key, std::move(m));
  }
}

CbMapData CbMapData::family(std::string name, std::vector<int> n, std::size_t e_dim, Mat unit, Rule rule,
                            double coeff_bound, bool herglotz_class) {
  CbMapData out(std::move(n), e_dim, std::move(unit), {}, herglotz_class);
  if (!rule) throw ConfigError("family needs a rule");
  if (!(coeff_bound >= 0.0)) throw ConfigError("family coefficient bound must be >= 0");
  out.rule_ = std::move(rule);
  out.bound_ = coeff_bound;
  out.name_ = std::move(name);
  return out;
}

CbMapData CbMapData::vacuum_state(const std::vector<int>& n, std::size_t e_dim) {
  const auto e = static_cast<Index>(e_dim);
  return CbMapData(n, e_dim, Mat::Identity(e, e), {});
}

CbMapData CbMapData::point_mass(const std::vector<std::vector<cplx>>& zeta) {
  std::vector<int> n;
  for (const auto& z : zeta) {
    if (z.empty()) throw ConfigError("point mass needs n_i >= 1");
    double norm2 = 0.0;
    for (cplx c : z) norm2 += std::norm(c);
    if (norm2 > 1.0 + 1e-12) throw ConfigError("point mass location is outside the closed polyball");
    n.push_back(static_cast<int>(z.size()));
  }
  auto monomial = [zeta](const MultiWord& a) {
    cplx out = 1.0;
    for (std::size_t i = 0; i < a.k(); ++i)
      for (int j : a.part(i).letters()) out *= zeta[i][static_cast<std::size_t>(j - 1)];
    return out;
  };
  Rule rule = [monomial](const MultiWord& a, const MultiWord& b) {
    return Mat::Constant(1, 1, std::conj(monomial(a)) * monomial(b));
  };
  return family("point_mass", n, 1, Mat::Identity(1, 1), std::move(rule), 1.0);
}

CbMapData CbMapData::from_compression(const std::vector<std::vector<Mat>>& v, const Mat& w, int max_total,
                                      bool herglotz_class) {
  CoeffMap c = compression_coeffs(v, w, max_total);
  const MultiWord id = MultiWord::identity(c.begin()->first.first.shape());
  Mat unit = c.at({id, id});
  return CbMapData(id.shape(), static_cast<std::size_t>(w.cols()), std::move(unit), std::move(c), herglotz_class);
}

double CbMapData::coeff_bound() const {
  if (is_family()) return bound_;
  double out = spectral_norm(unit_);
  for (const auto& [key, m] : values_) out = std::max(out, spectral_norm(m));
  return out;
}

Mat CbMapData::value(const MultiWord& a, const MultiWord& b) const {
  if (a.shape() != n_ || b.shape() != n_) throw ConfigError("map key shape mismatch");
  const auto e = static_cast<Index>(e_dim_);
  if (a.is_identity() && b.is_identity()) return unit_;
  if (!lambda_membership(a, b)) throw ConfigError("(" + a.str() + "; " + b.str() + ") is not a Lambda pair");
  if (herglotz_ && !a.is_identity() && !b.is_identity()) return Mat::Zero(e, e);
  if (is_family()) return rule_(a, b);
  auto it = values_.find({a, b});
  return it == values_.end() ? Mat::Zero(e, e) : it->second;
}

int CbMapData::support_length() const {
  if (is_family()) return -1;
  std::size_t out = 0;
  for (const auto& [key, m] : values_) out = std::max(out, key.first.total_length() + key.second.total_length());
  return static_cast<int>(out);
}

MultiToeplitzSymbol CbMapData::symbol(const std::vector<int>& degrees) const {
  if (degrees.size() != n_.size()) throw ConfigError("degrees length must equal k");
  MultiToeplitzSymbol out(n_, e_dim_);
  for (const auto& [a, b] : lambda_pairs(n_, static_cast<int>(total_degree(degrees)), degrees)) {
    if (herglotz_ && !a.is_identity() && !b.is_identity()) continue;
    const Mat m = value(a, b);
    if (m.cwiseAbs().maxCoeff() == 0.0) continue;
    out.set(a, b, m);
  }
  return out;
}

MultiToeplitzSymbol CbMapData::symbol() const {
  if (is_family()) throw ConfigError("a family needs explicit degrees");
  MultiToeplitzSymbol out(n_, e_dim_);
  const MultiWord id = MultiWord::identity(n_);
  out.set(id, id, unit_);
  for (const auto& [key, m] : values_) out.set(key.first, key.second, m);
  return out;
}

bool CbMapData::selfadjoint(double tol) const {
  if ((unit_ - unit_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (is_family()) return true;  // rules are not sampled
  for (const auto& [key, m] : values_)
    if ((value(key.second, key.first) - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

CbMapData CbMapData::scaled(double r) const {
  check_radius(r, true);
  auto factor = [r](const MultiWord& a, const MultiWord& b) {
    return std::pow(r, static_cast<double>(a.total_length() + b.total_length()));
  };
  if (is_family()) {
    Rule inner = rule_;
    CbMapData out = *this;
    out.rule_ = [inner, factor](const MultiWord& a, const MultiWord& b) -> Mat {
      const double s = factor(a, b);
      if (s == 0.0) return Mat::Zero(inner(a, b).rows(), inner(a, b).cols());
      return s * inner(a, b);
    };
    return out;
  }
  CbMapData out = *this;
  out.values_.clear();
  if (r == 0.0) return out;
  for (const auto& [key, m] : values_) out.values_.emplace(key, factor(key.first, key.second) * m);
  return out;
}

CbMapData mu_r_scale(const CbMapData& mu, double r) { return mu.scaled(r); }

SeriesValue poisson_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt) {
  if (x.n() != mu.n()) throw ConfigError("point shape does not match the map");
  require_member(x);
  SeriesValue out;
  if (!mu.is_family()) {
    const MultiToeplitzSymbol sym = mu.symbol();
    out.value = evaluate_symbol(sym, x);
    out.degrees = sym.factor_degrees();
    return out;
  }
  auto [deg, tail] = plan_series(SeriesKind::poisson, mu, x, opt);
  out.value = evaluate_symbol(mu.symbol(deg), x);
  out.degrees = std::move(deg);
  out.tail_bound = tail;
  return out;
}

SeriesValue fantappie_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt) {
  if (x.n() != mu.n()) throw ConfigError("point shape does not match the map");
  require_member(x);
  SeriesValue out;
  const MultiWord id = MultiWord::identity(mu.n());
  std::vector<MultiWord> words;
  if (mu.is_family()) {
    auto [deg, tail] = plan_series(SeriesKind::fantappie, mu, x, opt);
    words = multiwords_in_box(mu.n(), deg, static_cast<int>(total_degree(deg)));
    out.degrees = std::move(deg);
    out.tail_bound = tail;
  } else {
    words.push_back(id);
    out.degrees.assign(mu.n().size(), 0);
    for (const auto& [key, m] : mu.values()) {
      if (!key.second.is_identity()) continue;
      words.push_back(key.first);
      for (std::size_t i = 0; i < key.first.k(); ++i)
        out.degrees[i] = std::max(out.degrees[i], static_cast<int>(key.first.part(i).length()));
    }
  }
  const auto e = static_cast<Index>(mu.e_dim());
  const auto h = static_cast<Index>(x.h_dim());
  out.value = Mat::Zero(e * h, e * h);
  MonomialCache cache(x);
  for (const auto& a : words) add_block(out.value, mu.value(a, id), cache.monomial(a));
  return out;
}

SeriesValue herglotz_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt) {
  SeriesValue out = fantappie_transform(mu, x, opt);
  out.value *= 2.0;
  out.tail_bound *= 2.0;
  const auto h = static_cast<Index>(x.h_dim());
  add_block(out.value, -mu.unit(), Mat::Identity(h, h));
  return out;
}

CbMapData nu_of(const PluriharmonicFunction& f, double r) {
  check_radius(r, true);
  const MultiWord id = MultiWord::identity(f.n());
  const MultiToeplitzSymbol scaled = f.radial(r);
  return CbMapData(f.n(), f.e_dim(), scaled.at(id, id), scaled.coeffs());
}

CbMapData nu_trace_form(const PluriharmonicFunction& f, double r) {
  check_radius(r, true);
  std::vector<int> deg = f.factor_degrees();
  for (int& d : deg) d = std::max(d, 1);
  const TruncationPtr t = make_truncation(f.n(), deg);
  const Mat m = evaluate_symbol(f, PolyballPoint::shifts(*t, r, Side::right));
  const auto dim = static_cast<Index>(t->dim());
  const auto e = static_cast<Index>(f.e_dim());
  auto block = [&](const MultiWord& a, const MultiWord& b) {
    const auto ia = static_cast<Index>(t->index(a.reversed()));
    const auto ib = static_cast<Index>(t->index(b.reversed()));
    Mat out(e, e);
    for (Index p = 0; p < e; ++p)
      for (Index q = 0; q < e; ++q) out(p, q) = m(p * dim + ia, q * dim + ib);
    return out;
  };
  const MultiWord id = MultiWord::identity(f.n());
  CoeffMap values;
  for (const auto& [a, b] : lambda_pairs(f.n(), static_cast<int>(f.max_total_length()), deg)) {
    if (a.is_identity() && b.is_identity()) continue;
    Mat v = block(a, b);
    if (v.cwiseAbs().maxCoeff() > 0.0) values.emplace(LambdaPair{a, b}, std::move(v));
  }
  return CbMapData(f.n(), f.e_dim(), block(id, id), std::move(values));
}

}  // namespace polyball
