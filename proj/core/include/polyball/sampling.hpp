#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "polyball/naimark.hpp"
#include "polyball/point.hpp"
#include "polyball/toeplitz.hpp"
#include "polyball/types.hpp"

namespace polyball {

using Rng = std::mt19937_64;

// Entries with independent standard normal real and imaginary parts.
Mat random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Mat random_unitary(Rng& rng, Eigen::Index dim);

struct PointOptions {
  // Row norms ||sum_j X_{i,j} X_{i,j}^*||^{1/2} are drawn from
  // [min_row_norm, max_row_norm].
  double min_row_norm = 0.1;
  double max_row_norm = 0.6;
  // Per-factor block size; the point acts on block_dim^k.
  std::size_t block_dim = 2;
  // Strictly upper triangular blocks, making the tuple jointly nilpotent.
  bool nilpotent = false;
};

// X_{i,j} = I (x) ... (x) A_{i,j} (x) ... (x) I with A_{i,j} in slot i, so
// rows of different factors commute exactly and the defect is the tensor
// product of the per-factor defects.
PolyballPoint random_point(Rng& rng, const std::vector<int>& n, const PointOptions& opt = {});

struct SymbolOptions {
  std::size_t e_dim = 1;
  int max_total = 3;
  // Probability that a Lambda pair carries a coefficient.
  double density = 0.6;
  bool hermitian = false;
};

MultiToeplitzSymbol random_symbol(Rng& rng, const std::vector<int>& n, const SymbolOptions& opt = {});

// gen(a;b) = E^* S_a^* S_b E for Lambda pairs with total length <= max_total,
// E an isometry from C^e_dim onto vectors on words of length <= support_len.
// The resulting left kernel is positive semidefinite.
CoeffMap random_psd_left_generator(Rng& rng, const std::vector<int>& n, std::size_t e_dim, int max_total,
                                   int support_len = 1);

// Adds a Hermitian pair of perturbations at one non-identity Lambda pair,
// growing them until the left kernel at max_len has min eigenvalue below
// -margin.
CoeffMap break_positivity(Rng& rng, const CoeffMap& gen, const std::vector<int>& n, std::size_t e_dim,
                          int max_len, double margin = 1e-3);

}  // namespace polyball
