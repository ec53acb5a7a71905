#pragma once

// Seeded generators for the property tests. Kept separate from the
// library's sampling module so that module can be tested against them.

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "polyball/point.hpp"
#include "polyball/toeplitz.hpp"
#include "polyball/words.hpp"

namespace gen {

using Rng = std::mt19937_64;
using oracle::cplx;
using oracle::Mat;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Mat matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Mat psd(Rng& rng, Eigen::Index dim) {
  const Mat a = matrix(rng, dim, dim);
  return a * a.adjoint();
}

// Row of n blocks of size b scaled to row norm `norm`.
inline std::vector<Mat> row(Rng& rng, int n, Eigen::Index b, double norm, bool nilpotent) {
  std::vector<Mat> out;
  Mat sum = Mat::Zero(b, b);
  for (int j = 0; j < n; ++j) {
    Mat a = matrix(rng, b, b);
    if (nilpotent)
      for (Eigen::Index r = 0; r < b; ++r)
        for (Eigen::Index c = 0; c <= r; ++c) a(r, c) = 0.0;
    sum += a * a.adjoint();
    out.push_back(a);
  }
  const double s = oracle::norm(sum);
  for (auto& a : out) a *= s > 0.0 ? norm / std::sqrt(s) : 0.0;
  return out;
}

// Commuting tuple: factor i acts on slot i of a b^k tensor product.
inline polyball::PolyballPoint point(Rng& rng, const std::vector<int>& n, Eigen::Index b, double max_norm,
                                     bool nilpotent = false) {
  std::vector<std::vector<Mat>> x(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto blocks = row(rng, n[i], b, uniform(rng, 0.05, max_norm), nilpotent);
    for (const auto& a : blocks) {
      Mat full = Mat::Identity(1, 1);
      for (std::size_t s = 0; s < n.size(); ++s) full = oracle::kron(full, s == i ? a : Mat::Identity(b, b));
      x[i].push_back(full);
    }
  }
  return polyball::PolyballPoint(x);
}

inline polyball::MultiWord word(Rng& rng, const std::vector<int>& n, const std::vector<int>& max_len) {
  std::vector<polyball::Word> parts;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const int len = std::uniform_int_distribution<int>(0, max_len[i])(rng);
    std::vector<int> letters;
    for (int p = 0; p < len; ++p) letters.push_back(std::uniform_int_distribution<int>(1, n[i])(rng));
    parts.emplace_back(n[i], letters);
  }
  return polyball::MultiWord(parts);
}

// Lambda pair with per-factor lengths <= caps.
inline polyball::LambdaPair lambda_pair(Rng& rng, const std::vector<int>& n, const std::vector<int>& caps) {
  polyball::MultiWord a = word(rng, n, caps), b = word(rng, n, caps);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (std::bernoulli_distribution(0.5)(rng))
      a.part(i) = polyball::Word(n[i]);
    else
      b.part(i) = polyball::Word(n[i]);
  }
  return {a, b};
}

inline polyball::MultiToeplitzSymbol symbol(Rng& rng, const std::vector<int>& n, std::size_t e, int terms,
                                            const std::vector<int>& caps) {
  polyball::MultiToeplitzSymbol s(n, e);
  for (int t = 0; t < terms; ++t) {
    const auto [a, b] = lambda_pair(rng, n, caps);
    s.add(a, b, matrix(rng, static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)));
  }
  return s;
}

// Hermitian-symmetric symbol with every Lambda pair of total length <= max_total.
inline polyball::MultiToeplitzSymbol hermitian_symbol(Rng& rng, const std::vector<int>& n, int max_total,
                                                      double scale) {
  polyball::MultiToeplitzSymbol s(n, 1);
  for (const auto& [a, b] : polyball::lambda_pairs(n, max_total)) {
    if (b < a) continue;
    Mat m = scale * matrix(rng, 1, 1);
    if (a == b) m(0, 0) = std::real(m(0, 0)) + 1.0;
    s.set(a, b, m);
    if (!(a == b)) s.set(b, a, m.adjoint());
  }
  return s;
}

}  // namespace gen
