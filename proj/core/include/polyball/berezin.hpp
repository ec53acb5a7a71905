#pragma once

#include <cstddef>
#include <vector>

#include "polyball/fock.hpp"
#include "polyball/point.hpp"
#include "polyball/types.hpp"

namespace polyball {

// Phi_i(Y) = sum_j X_{i,j} Y X_{i,j}^*.
Mat apply_phi(const PolyballPoint& x, std::size_t i, const Mat& y);
// (id - Phi_{order[0]}) o ... o (id - Phi_{order[k-1]}) applied to y.
// Empty order means 0..k-1.
Mat apply_defect(const PolyballPoint& x, const Mat& y, const std::vector<std::size_t>& order = {});
// Delta_X(I).
Mat defect(const PolyballPoint& x);

struct MembershipReport {
  bool member = false;
  std::vector<double> row_norms;
  double defect_min_eig = 0.0;
  double commutator_norm = 0.0;
};

MembershipReport in_polyball(const PolyballPoint& x, double margin = 0.0, double commute_tol = 1e-10);

struct SpectralRadiusReport {
  double value = 0.0;
  double last = 0.0;
  double previous = 0.0;
  // ||Phi_1^p ... Phi_k^p (I)||^{1/(2kp)} for p = 1..max_p.
  std::vector<double> iterates;
};

SpectralRadiusReport spectral_radius(const PolyballPoint& x, int max_p);

// s(p) = ||Phi_i^p(I)||^{1/2} for p = 0..max_p, factor i 0-based. The
// sequence is submultiplicative, which drives every series tail bound.
std::vector<double> phi_power_roots(const PolyballPoint& x, std::size_t i, int max_p);

// K_X h = sum_b e_b (x) Delta^{1/2} X_b^* h over the truncation. Stored as
// blocks K_b = Delta^{1/2} X_b^*; the full matrix maps H into H (x) Fock in
// coefficient-major layout. The defect space is kept inside H; its rank is
// recorded.
struct BerezinKernel {
  TruncationPtr truncation;
  std::size_t h_dim = 0;
  std::vector<Mat> blocks;
  Mat defect_sqrt;
  std::size_t defect_rank = 0;
  // Bound on ||K_X - K_X,truncated||.
  double tail_bound = 0.0;

  Mat matrix() const;
};

BerezinKernel berezin_kernel(const PolyballPoint& x, const TruncationPtr& t);

// Compression K^*(g (x) I)K; for coeff_dim > 1 the extended form on E (x) H.
Mat berezin_transform(const FockOperator& g, const BerezinKernel& k);
Mat berezin_transform(const FockOperator& g, const PolyballPoint& x);

// ||B_X(S_a S_b^*) - X_a X_b^*|| bound at the given truncation.
double moment_tail_bound(const PolyballPoint& x, const FockTruncation& t, const MultiWord& a,
                         const MultiWord& b);

using OperatorTuple = std::vector<std::vector<SpMat>>;

OperatorTuple creation_tuple(const FockTruncation& t, Side side);
OperatorTuple to_tuple(const std::vector<std::vector<Mat>>& v);

// C_X(V) rhs with C_X(V) = (Delta^{1/2} (x) I) prod_i (I - sum_j X_{i,j}^* (x) V_{i,j})^{-1}
// on H (x) K, coefficient-major. Sparse LU solves.
Mat cauchy_apply(const OperatorTuple& v, const PolyballPoint& x, const Mat& rhs);
Mat cauchy_operator(const OperatorTuple& v, const PolyballPoint& x);

// Bound on ||(I - P_degrees) C_X P_window|| for V = truncated right creations.
double cauchy_tail_bound(const PolyballPoint& x, const std::vector<int>& window_caps,
                         const std::vector<int>& degrees);

struct SeriesOperator {
  FockOperator op;
  // Bound on the norm of the omitted part of the infinite series. The
  // compression of the infinite kernel to the truncation is exact.
  double tail_bound = 0.0;
};

// P(R,X) = sum over Lambda of R_{~a}^* R_{~b} (x) X_a X_b^*, acting on H (x) Fock.
SeriesOperator poisson_kernel(const PolyballPoint& x, const TruncationPtr& t);

}  // namespace polyball
