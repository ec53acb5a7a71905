#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "polyball/fock.hpp"
#include "polyball/point.hpp"
#include "polyball/types.hpp"
#include "polyball/words.hpp"

namespace polyball {

using CoeffMap = std::map<LambdaPair, Mat>;

// Finitely supported coefficient map on Lambda pairs. The same object is
// the Fourier symbol of a multi-Toeplitz operator and the data of a free
// pluriharmonic function sum A_(a;b) (x) X_a X_b^*.
class MultiToeplitzSymbol {
 public:
  MultiToeplitzSymbol() = default;
  MultiToeplitzSymbol(std::vector<int> n, std::size_t e_dim);

  const std::vector<int>& n() const { return n_; }
  std::size_t e_dim() const { return e_dim_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  void set(const MultiWord& a, const MultiWord& b, const Mat& m);
  void add(const MultiWord& a, const MultiWord& b, const Mat& m);
  Mat at(const MultiWord& a, const MultiWord& b) const;

  std::size_t max_total_length() const;
  // Per factor, the largest max(|a_i|,|b_i|) over the support.
  std::vector<int> factor_degrees() const;

  // A_(b;a) = A_(a;b)^* for every pair, up to tol.
  bool hermitian_symmetric(double tol = 1e-12) const;
  // Coefficients times r^{|a|+|b|}.
  MultiToeplitzSymbol radial(double r) const;

 private:
  std::vector<int> n_;
  std::size_t e_dim_ = 1;
  CoeffMap coeffs_;
};

struct ToeplitzReport {
  bool pass = false;
  double max_violation = 0.0;
};

// (I (x) R_{i,s}^*) T (I (x) R_{i,t}) = delta_st T, both sides read on the
// budget-1 window of factor i.
ToeplitzReport is_k_multi_toeplitz(const FockOperator& t, double tol = 1e-10);

// Largest deviation of T from the entry pattern
// T[w, v] = T[c_r^+(w,v), c_r^-(w,v)] (comparable) and 0 (incomparable).
double toeplitz_structure_violation(const FockOperator& t);

// A[l,h] = <T(h (x) e_b), l (x) e_a>.
Mat fourier_coefficient(const FockOperator& t, const MultiWord& a, const MultiWord& b);

// All coefficients with total length <= max_total_len whose largest entry
// exceeds drop_tol in modulus.
MultiToeplitzSymbol extract_symbol(const FockOperator& t, int max_total_len, double drop_tol = 0.0);

// sum A_(a;b) (x) X_a X_b^* on E (x) H.
Mat evaluate_symbol(const MultiToeplitzSymbol& sym, const PolyballPoint& x);

// Sparse evaluation at r times the truncated left creations.
FockOperator symbol_operator(const MultiToeplitzSymbol& sym, const TruncationPtr& t, double r = 1.0);

}  // namespace polyball
