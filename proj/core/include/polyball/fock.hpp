#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "polyball/types.hpp"
#include "polyball/words.hpp"

namespace polyball {

// Tensor product of truncated full Fock spaces, factor i keeping words of
// length <= degrees[i]. Basis: graded-lex per factor, row-major across
// factors (factor 1 most significant).
class FockTruncation {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  FockTruncation(std::vector<int> n, std::vector<int> degrees);

  std::size_t k() const { return n_.size(); }
  const std::vector<int>& n() const { return n_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t dim() const { return dim_; }
  std::size_t factor_dim(std::size_t i) const { return factor_words_[i].size(); }
  const std::vector<Word>& factor_words(std::size_t i) const { return factor_words_[i]; }

  bool admissible(const MultiWord& w) const;
  std::size_t index(const MultiWord& w) const;
  // npos instead of throwing when w is not admissible.
  std::size_t find(const MultiWord& w) const;
  const MultiWord& word(std::size_t idx) const { return basis_[idx]; }
  const std::vector<MultiWord>& basis() const { return basis_; }

  // Per-factor ranks of a basis index.
  std::vector<std::size_t> split(std::size_t idx) const;
  std::size_t join(const std::vector<std::size_t>& ranks) const;

  // Factor-local letter moves on graded-lex ranks; npos when the result
  // leaves the truncation (creation) or the letter is absent (annihilation).
  std::size_t prepend(std::size_t i, int j, std::size_t rank) const;
  std::size_t append(std::size_t i, int j, std::size_t rank) const;
  std::size_t strip_first(std::size_t i, int j, std::size_t rank) const;
  std::size_t strip_last(std::size_t i, int j, std::size_t rank) const;

  bool operator==(const FockTruncation& rhs) const {
    return n_ == rhs.n_ && degrees_ == rhs.degrees_;
  }

 private:
  std::vector<int> n_;
  std::vector<int> degrees_;
  std::size_t dim_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<Word>> factor_words_;
  std::vector<MultiWord> basis_;
};

using TruncationPtr = std::shared_ptr<const FockTruncation>;

TruncationPtr make_truncation(std::vector<int> n, std::vector<int> degrees);

// Words whose factor-i length is at most degrees[i] - budget[i]. Products of
// creations raising factor i by at most budget[i] act without truncation
// loss on vectors supported here.
class Window {
 public:
  Window(TruncationPtr t, std::vector<int> caps);
  bool contains(const MultiWord& w) const;
  bool contains_index(std::size_t idx) const { return member_[idx]; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<int>& caps() const { return caps_; }

 private:
  TruncationPtr t_;
  std::vector<int> caps_;
  std::vector<char> member_;
  std::vector<std::size_t> indices_;
};

Window exact_window(const TruncationPtr& t, const std::vector<int>& raise_budget);

// Amplitudes are dim x coeff_dim. Flattened column-major they give the
// coefficient-major layout used by every operator: index = c * dim + basis.
struct FockVector {
  TruncationPtr truncation;
  Mat amplitudes;

  std::size_t coeff_dim() const { return static_cast<std::size_t>(amplitudes.cols()); }
  Vec flat() const;
  static FockVector from_flat(TruncationPtr t, const Vec& v, std::size_t coeff_dim);
  static FockVector basis_vector(TruncationPtr t, const MultiWord& w, std::size_t coeff_dim = 1,
                                 std::size_t c = 0);
};

// Operator on (coefficient space) x (truncation), coefficient-major layout.
struct FockOperator {
  TruncationPtr truncation;
  std::size_t coeff_dim = 1;
  SpMat matrix;
  bool self_adjoint = false;
  bool positive = false;

  std::size_t size() const { return coeff_dim * truncation->dim(); }
  Mat dense() const { return Mat(matrix); }
  FockVector apply(const FockVector& v) const;
};

// Left: S_{i,j} e_w = e_{g_j w}. Right: R_{i,j} e_w = e_{w g_j}. Creation is
// compressed to the truncation; annihilation is exact.
FockVector apply_creation(const FockTruncation& t, Side side, int i, int j, bool adjoint,
                          const FockVector& v);

SpMat creation_matrix(const FockTruncation& t, Side side, int i, int j, bool adjoint = false);

// Left side: S_a S_b^* (strip prefix b, prepend a). Right side: strip the
// suffix b, then append a; this is R_{~a} R_{~b}^* with R_{~a} e_w = e_{w a}.
SpMat word_matrix(const FockTruncation& t, Side side, const MultiWord& a, const MultiWord& b);

FockOperator word_operator(const TruncationPtr& t, const MultiWord& a, const MultiWord& b,
                           const Mat& coefficient, Side side = Side::left);

FockOperator identity_operator(const TruncationPtr& t, std::size_t coeff_dim = 1);

// kron(C, W) in coefficient-major layout.
SpMat coefficient_kron(const Mat& c, const SpMat& w);
// Triplets of kron(C, W), for summing many terms in one assembly.
void kron_triplets(const Mat& c, const SpMat& w, std::vector<Eigen::Triplet<cplx>>& out);
// kron(I_e, W).
SpMat lift(const SpMat& w, std::size_t e);

}  // namespace polyball
