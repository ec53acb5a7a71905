#pragma once

#include <cstddef>
#include <vector>

#include "polyball/toeplitz.hpp"
#include "polyball/types.hpp"
#include "polyball/words.hpp"

namespace polyball {

// Kernel on multiword pairs determined by its generator on Lambda pairs:
// K(s,w) = gen(c^+(s,w); c^-(s,w)) for comparable pairs (left or right
// comparability by side) and 0 otherwise. Words range over the box
// |w_i| <= caps[i], |w| <= max_len.
class ToeplitzKernel {
 public:
  ToeplitzKernel() = default;
  ToeplitzKernel(Side side, std::vector<int> n, std::size_t e_dim, int max_len, CoeffMap generator,
                 std::vector<int> caps = {});

  Side side() const { return side_; }
  const std::vector<int>& n() const { return n_; }
  std::size_t e_dim() const { return e_dim_; }
  int max_len() const { return max_len_; }
  const std::vector<int>& caps() const { return caps_; }
  const CoeffMap& generator() const { return gen_; }

  Mat value(const MultiWord& s, const MultiWord& w) const;
  Mat gen(const MultiWord& a, const MultiWord& b) const;
  std::vector<MultiWord> words() const;
  // G[(a,s),(b,w)] = K(s,w)[a,b], coefficient-major over words().
  Mat gram() const;
  // Same kernel read through word reversal: K'(s,w) = K(~s,~w), other side.
  ToeplitzKernel reversed() const;

 private:
  Side side_ = Side::left;
  std::vector<int> n_;
  std::size_t e_dim_ = 1;
  int max_len_ = 0;
  std::vector<int> caps_;
  CoeffMap gen_;
};

// Completes the generator by Hermitian symmetry and validates gen(g,g) = I.
ToeplitzKernel kernel_from_generator(Side side, std::vector<int> n, std::size_t e_dim, const CoeffMap& gen,
                                     int max_len, std::vector<int> caps = {});

struct PsdReport {
  bool psd = false;
  double min_eig = 0.0;
  double max_eig = 0.0;
};

PsdReport kernel_is_psd(const ToeplitzKernel& k, double tol = 1e-10);

// Commuting row isometries V_{i,j} on the dilation space with
// K(s,w) = E^* V_s^* V_w E (left) or Gamma(s,w) = E^* V_{~s}^* V_{~w} E
// (right, through reversal). Exact on words of length <= window_len.
struct NaimarkDilation {
  Side side = Side::left;
  std::vector<int> n;
  std::size_t e_dim = 1;
  std::size_t space_dim = 0;
  std::vector<std::vector<Mat>> v;
  Mat embedding;
  int max_len = 0;
  int window_len = 0;
  double discarded_eig = 0.0;

  // V_w x with V_w = V_{1,w_1} ... V_{k,w_k}.
  Mat apply_word(const MultiWord& w, const Mat& x) const;
};

NaimarkDilation naimark_dilate(const ToeplitzKernel& k, double rank_tol = 1e-10, double psd_tol = 1e-10);

struct DilationReport {
  double reproduction_error = 0.0;
  std::vector<double> isometry_defect;
  double commutator_norm = 0.0;
  double embedding_defect = 0.0;
  std::size_t span_dim = 0;
  std::size_t space_dim = 0;
  long dimension_gap = 0;
  bool minimal = false;
};

DilationReport dilation_verify(const NaimarkDilation& d, const ToeplitzKernel& k, double rank_tol = 1e-10);

// Orthonormal basis of the column span, singular values below
// rel_tol * largest dropped.
Mat column_basis(const Mat& m, double rel_tol);

}  // namespace polyball
