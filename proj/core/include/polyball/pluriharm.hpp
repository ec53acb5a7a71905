#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "polyball/fock.hpp"
#include "polyball/naimark.hpp"
#include "polyball/point.hpp"
#include "polyball/toeplitz.hpp"
#include "polyball/types.hpp"

namespace polyball {

// A free k-pluriharmonic function is stored as its coefficient symbol.
using PluriharmonicFunction = MultiToeplitzSymbol;

// Right kernel with Gamma(s,w) = r^{|c+|+|c-|} A_(c+;c-) on right-comparable
// pairs. Empty caps means max_len in every factor.
ToeplitzKernel gamma_kernel(const PluriharmonicFunction& f, double r, int max_len, std::vector<int> caps = {});

struct SchurPoint {
  double r = 0.0;
  double operator_min_eig = 0.0;
  double kernel_min_eig = 0.0;
  bool operator_positive = false;
  bool kernel_positive = false;
};

struct SchurReport {
  std::vector<SchurPoint> points;
  bool agree = true;
  bool positive = true;
};

// For each r: min eigenvalue of F(rS) on the truncation and of the
// Gamma_{F_r} Gram matrix over the same word box.
SchurReport schur_positivity(const PluriharmonicFunction& f, const std::vector<double>& r_grid,
                             const TruncationPtr& t, double tol = 1e-8);

// Coefficients E^* V_{~a}^* V_{~b} E over Lambda pairs with total length
// <= max_total. E must have orthonormal columns and V must commute across
// factors to comm_tol.
PluriharmonicFunction from_row_isometries(const std::vector<std::vector<Mat>>& v, const Mat& e_basis,
                                          int max_total, double comm_tol = 1e-10);

// (A_g - A_g^*) / (2i) of the constant coefficient.
Mat imag_at_zero(const PluriharmonicFunction& f);

// Values mu(R_{~a}^* R_{~b}) of a linear map on Lambda monomials. A finite
// map stores them; a family computes them on demand from a rule whose
// values are bounded in norm by coeff_bound.
class CbMapData {
 public:
  using Rule = std::function<Mat(const MultiWord& a, const MultiWord& b)>;

  CbMapData() = default;
  CbMapData(std::vector<int> n, std::size_t e_dim, Mat unit, CoeffMap values, bool herglotz_class = false);

  static CbMapData family(std::string name, std::vector<int> n, std::size_t e_dim, Mat unit, Rule rule,
                          double coeff_bound, bool herglotz_class = false);
  // tau: unit only.
  static CbMapData vacuum_state(const std::vector<int>& n, std::size_t e_dim = 1);
  // Evaluation at a scalar point zeta of the closed polyball:
  // mu(R_{~a}^* R_{~b}) = conj(zeta_a) zeta_b.
  static CbMapData point_mass(const std::vector<std::vector<cplx>>& zeta);
  // mu(R_{~a}^* R_{~b}) = W^* V_{~a}^* V_{~b} W up to total length max_total.
  static CbMapData from_compression(const std::vector<std::vector<Mat>>& v, const Mat& w, int max_total,
                                    bool herglotz_class = false);

  const std::vector<int>& n() const { return n_; }
  std::size_t e_dim() const { return e_dim_; }
  const Mat& unit() const { return unit_; }
  bool herglotz_class() const { return herglotz_; }
  bool is_family() const { return static_cast<bool>(rule_); }
  const std::string& family_name() const { return name_; }
  double coeff_bound() const;
  // Stored values of a finite map, (g0; g0) excluded.
  const CoeffMap& values() const { return values_; }

  Mat value(const MultiWord& a, const MultiWord& b) const;
  // Largest total length in the support of a finite map.
  int support_length() const;
  // Pairs with max(|a_i|,|b_i|) <= degrees[i], including (g0; g0).
  MultiToeplitzSymbol symbol(const std::vector<int>& degrees) const;
  // Finite map: every stored value.
  MultiToeplitzSymbol symbol() const;
  bool selfadjoint(double tol = 1e-10) const;
  CbMapData scaled(double r) const;

 private:
  std::vector<int> n_;
  std::size_t e_dim_ = 1;
  Mat unit_;
  CoeffMap values_;
  bool herglotz_ = false;
  Rule rule_;
  double bound_ = 0.0;
  std::string name_;
};

CbMapData mu_r_scale(const CbMapData& mu, double r);

struct SeriesOptions {
  // Explicit per-factor degrees; empty means choose from tol.
  std::vector<int> degrees;
  double tol = 1e-10;
  int max_degree = 400;
  // Refuse truncations with more Lambda terms than this.
  double max_terms = 2e6;
};

struct SeriesValue {
  Mat value;
  double tail_bound = 0.0;
  std::vector<int> degrees;
};

// sum over Lambda of mu(R_{~a}^* R_{~b}) (x) X_a X_b^* on E (x) H.
SeriesValue poisson_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt = {});
// sum over a of mu(R_{~a}^*) (x) X_a.
SeriesValue fantappie_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt = {});
// 2 (F mu)(X) - mu(I) (x) I.
SeriesValue herglotz_transform(const CbMapData& mu, const PolyballPoint& x, const SeriesOptions& opt = {});

// nu_{F_r}(R_{~a}^* R_{~b}) = r^{|a|+|b|} A_(a;b), unit A_(g0;g0).
CbMapData nu_of(const PluriharmonicFunction& f, double r);
// The same map read from F(rR) on a truncation: value (a;b) is the
// (~a, ~b) block of F(rR).
CbMapData nu_trace_form(const PluriharmonicFunction& f, double r);

}  // namespace polyball
