#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "polyball/fock.hpp"
#include "polyball/types.hpp"
#include "polyball/words.hpp"

namespace polyball {

// k-tuple of operator rows X_i = (X_{i,1},...,X_{i,n_i}) on H = C^h_dim.
// Entries of different rows are expected to commute.
class PolyballPoint {
 public:
  PolyballPoint() = default;
  explicit PolyballPoint(std::vector<std::vector<Mat>> x);

  static PolyballPoint zero(const std::vector<int>& n, std::size_t h_dim);
  static PolyballPoint scalars(const std::vector<std::vector<cplx>>& z);
  // r times the truncated left (or right) creation operators, H = truncation.
  static PolyballPoint shifts(const FockTruncation& t, double r, Side side = Side::left);

  std::size_t k() const { return x_.size(); }
  std::vector<int> n() const;
  std::size_t h_dim() const { return h_dim_; }
  // 1-based factor and generator indices.
  const Mat& operator()(int i, int j) const { return x_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; }
  const std::vector<std::vector<Mat>>& rows() const { return x_; }

  PolyballPoint scaled(double r) const;

  // X_{i,w} = X_{i,j_1} ... X_{i,j_p}.
  Mat factor_monomial(std::size_t i, const Word& w) const;
  // X_a = X_{1,a_1} ... X_{k,a_k}.
  Mat monomial(const MultiWord& a) const;

  // Largest ||X_{i,j} X_{i',j'} - X_{i',j'} X_{i,j}|| over i != i'.
  double cross_commutator_norm() const;
  // ||sum_j X_{i,j} X_{i,j}^*||^{1/2} per factor.
  std::vector<double> row_norms() const;

 private:
  std::vector<std::vector<Mat>> x_;
  std::size_t h_dim_ = 0;
};

// Memoized monomials X_{i,w}, used by every truncated series.
class MonomialCache {
 public:
  explicit MonomialCache(const PolyballPoint& x) : x_(&x), factor_(x.k()) {}
  const Mat& factor(std::size_t i, const Word& w);
  Mat monomial(const MultiWord& a);
  // X_a X_b^*.
  Mat term(const MultiWord& a, const MultiWord& b);

 private:
  const PolyballPoint* x_;
  std::vector<std::map<Word, Mat>> factor_;
};

double spectral_norm(const Mat& m);
// Hermitian square root with eigenvalues clamped at zero below clamp.
Mat psd_sqrt(const Mat& m, double clamp = 1e-12);
double min_eigenvalue(const Mat& hermitian);

}  // namespace polyball
