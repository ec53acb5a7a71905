#include "polyball/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polyball {

namespace {

using Index = Eigen::Index;
using SparseVec = std::map<MultiWord, cplx>;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

cplx dot(const SparseVec& u, const SparseVec& v) {
  cplx out = 0.0;
  for (const auto& [w, c] : v) {
    auto it = u.find(w);
    if (it != u.end()) out += std::conj(it->second) * c;
  }
  return out;
}

// S_a applied to a finitely supported vector: prepend a in every factor.
SparseVec prepend(const MultiWord& a, const SparseVec& v) {
  SparseVec out;
  for (const auto& [w, c] : v) {
    MultiWord x = w;
    for (std::size_t i = 0; i < x.k(); ++i) x.part(i) = a.part(i) * x.part(i);
    out[x] += c;
  }
  return out;
}

}  // namespace

Mat random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Mat random_unitary(Rng& rng, Index dim) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, dim, dim));
  return qr.householderQ() * Mat::Identity(dim, dim);
}

PolyballPoint random_point(Rng& rng, const std::vector<int>& n, const PointOptions& opt) {
  if (n.empty()) throw ConfigError("point needs k >= 1");
  if (opt.block_dim == 0) throw ConfigError("block_dim must be >= 1");
  if (!(opt.min_row_norm >= 0.0) || opt.max_row_norm < opt.min_row_norm || opt.max_row_norm >= 1.0)
    throw ConfigError("row norm range must satisfy 0 <= min <= max < 1");
  const auto b = static_cast<Index>(opt.block_dim);
  std::vector<std::vector<Mat>> x(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    std::vector<Mat> blocks;
    Mat row_sum = Mat::Zero(b, b);
    for (int j = 0; j < n[i]; ++j) {
      Mat a = random_matrix(rng, b, b);
      if (opt.nilpotent) a = a.triangularView<Eigen::StrictlyUpper>();
      row_sum += a * a.adjoint();
      blocks.push_back(std::move(a));
    }
    const double norm = std::sqrt(spectral_norm(row_sum));
    const double target = uniform(rng, opt.min_row_norm, opt.max_row_norm);
    const double scale = norm > 0.0 ? target / norm : 0.0;
    for (Mat& a : blocks) {
      Mat full = Mat::Identity(1, 1);
      for (std::size_t s = 0; s < n.size(); ++s) full = kron(full, s == i ? Mat(scale * a) : Mat::Identity(b, b));
      x[i].push_back(std::move(full));
    }
  }
  return PolyballPoint(std::move(x));
}

MultiToeplitzSymbol random_symbol(Rng& rng, const std::vector<int>& n, const SymbolOptions& opt) {
  MultiToeplitzSymbol sym(n, opt.e_dim);
  const auto e = static_cast<Index>(opt.e_dim);
  std::bernoulli_distribution keep(opt.density);
  for (const auto& [a, b] : lambda_pairs(n, opt.max_total)) {
    if (opt.hermitian && b < a) continue;  // filled from its mirror
    const bool diagonal = a == b;
    if (!diagonal && !keep(rng)) continue;
    Mat m = random_matrix(rng, e, e) / std::sqrt(2.0 * static_cast<double>(e));
    if (opt.hermitian && diagonal) m = 0.5 * (m + m.adjoint()).eval();
    sym.set(a, b, m);
    if (opt.hermitian && !diagonal) sym.set(b, a, m.adjoint());
  }
  return sym;
}

CoeffMap random_psd_left_generator(Rng& rng, const std::vector<int>& n, std::size_t e_dim, int max_total,
                                   int support_len) {
  std::vector<int> caps(n.size(), support_len);
  const auto support = multiwords_in_box(n, caps, support_len);
  const auto e = static_cast<Index>(e_dim);
  if (support.size() < e_dim) throw ConfigError("support too small for the requested coefficient dimension");
  Eigen::HouseholderQR<Mat> qr(random_matrix(rng, static_cast<Index>(support.size()), e));
  const Mat q = qr.householderQ() * Mat::Identity(static_cast<Index>(support.size()), e);
  std::vector<SparseVec> cols(e_dim);
  for (Index c = 0; c < e; ++c)
    for (std::size_t p = 0; p < support.size(); ++p) cols[static_cast<std::size_t>(c)][support[p]] = q(static_cast<Index>(p), c);

  CoeffMap gen;
  for (const auto& [a, b] : lambda_pairs(n, max_total)) {
    Mat m(e, e);
    std::vector<SparseVec> sa, sb;
    for (const auto& v : cols) {
      sa.push_back(prepend(a, v));
      sb.push_back(prepend(b, v));
    }
    for (Index p = 0; p < e; ++p)
      for (Index r = 0; r < e; ++r) m(p, r) = dot(sa[static_cast<std::size_t>(p)], sb[static_cast<std::size_t>(r)]);
    gen.emplace(LambdaPair{a, b}, std::move(m));
  }
  return gen;
}

CoeffMap break_positivity(Rng& rng, const CoeffMap& gen, const std::vector<int>& n, std::size_t e_dim,
                          int max_len, double margin) {
  std::vector<LambdaPair> targets;
  for (const auto& [a, b] : lambda_pairs(n, max_len)) {
    if (a.is_identity() && b.is_identity()) continue;
    if (b < a) continue;
    targets.push_back({a, b});
  }
  if (targets.empty()) throw ConfigError("no pair available to perturb");
  const auto& [a, b] = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
  const auto e = static_cast<Index>(e_dim);
  Mat dir = random_matrix(rng, e, e);
  if (a == b) dir = (dir + dir.adjoint()).eval();
  dir /= spectral_norm(dir);
  for (double t = 0.25; t < 1e6; t *= 2.0) {
    CoeffMap out = gen;
    auto bump = [&](const MultiWord& x, const MultiWord& y, const Mat& d) {
      auto it = out.find({x, y});
      if (it == out.end())
        out.emplace(LambdaPair{x, y}, d);
      else
        it->second += d;
    };
    bump(a, b, t * dir);
    if (!(a == b)) bump(b, a, t * dir.adjoint());
    const ToeplitzKernel k(Side::left, n, e_dim, max_len, out);
    if (kernel_is_psd(k, 0.0).min_eig < -margin) return out;
  }
  throw ConfigError("could not break positivity");
}

}  // namespace polyball
