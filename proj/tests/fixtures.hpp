#pragma once

// Constructions shared by the unit tests and the acceptance binary. All are
// built from dense products and plain letter arithmetic.

#include <map>
#include <random>
#include <vector>

#include "generators.hpp"
#include "oracle.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"

namespace fixture {

using namespace polyball;

// gen(a;b) = E^* S_a^* S_b E with E an isometry onto vectors supported on
// words of total length <= 1. Vectors are kept as maps from letter tuples to
// coefficients, so S_b is prepending b factor by factor.
inline CoeffMap psd_generator(gen::Rng& rng, const std::vector<int>& n, std::size_t e, int max_total) {
  std::vector<oracle::Multi> support{oracle::Multi(n.size())};
  for (std::size_t i = 0; i < n.size(); ++i)
    for (int j = 1; j <= n[i]; ++j) {
      oracle::Multi w(n.size());
      w[i] = {j};
      support.push_back(w);
    }
  const auto eb = static_cast<Eigen::Index>(e);
  const auto sb = static_cast<Eigen::Index>(support.size());
  Eigen::HouseholderQR<Mat> qr(gen::matrix(rng, sb, eb));
  const Mat q = qr.householderQ() * Mat::Identity(sb, eb);
  const auto shifted = [&](const oracle::Multi& a, Eigen::Index c) {
    std::map<oracle::Multi, cplx> v;
    for (Eigen::Index p = 0; p < sb; ++p) {
      oracle::Multi w = support[static_cast<std::size_t>(p)];
      for (std::size_t i = 0; i < w.size(); ++i) w[i].insert(w[i].begin(), a[i].begin(), a[i].end());
      v[w] += q(p, c);
    }
    return v;
  };
  CoeffMap out;
  for (const auto& [a, b] : lambda_pairs(n, max_total)) {
    Mat m(eb, eb);
    for (Eigen::Index r = 0; r < eb; ++r)
      for (Eigen::Index c = 0; c < eb; ++c) {
        const auto u = shifted(oracle::to_multi(a), r);
        const auto v = shifted(oracle::to_multi(b), c);
        cplx acc = 0.0;
        for (const auto& [w, x] : u)
          if (auto it = v.find(w); it != v.end()) acc += std::conj(x) * it->second;
        m(r, c) = acc;
      }
    out[{a, b}] = m;
  }
  return out;
}

// Pushes one off-diagonal pair until the left kernel has a clearly negative
// eigenvalue.
inline CoeffMap break_psd(gen::Rng& rng, CoeffMap g, const std::vector<int>& n, std::size_t e, int max_len) {
  std::vector<LambdaPair> pairs;
  for (const auto& [a, b] : lambda_pairs(n, max_len))
    if (!(a.is_identity() && b.is_identity()) && a < b) pairs.push_back({a, b});
  const auto& [a, b] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
  const Mat dir = gen::matrix(rng, static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e));
  for (double t = 0.5;; t *= 2.0) {
    CoeffMap out = g;
    out[{a, b}] += t * dir;
    out[{b, a}] += t * dir.adjoint();
    if (kernel_is_psd(ToeplitzKernel(Side::left, n, e, max_len, out)).min_eig < -1e-3) return out;
  }
}

// Dense right creations R_{i,j} on the basis.
inline std::vector<std::vector<Mat>> right_creations(const oracle::Basis& b) {
  std::vector<std::vector<Mat>> v(b.n.size());
  for (std::size_t i = 0; i < b.n.size(); ++i)
    for (int j = 1; j <= b.n[i]; ++j) v[i].push_back(oracle::creation(b, static_cast<int>(i + 1), j, true));
  return v;
}

// prod_i (I - sum_j V_{i,j}^* (x) X_{i,j})^{-1} on K (x) H by dense solves.
inline Mat resolvent_product(const std::vector<std::vector<Mat>>& v, const PolyballPoint& x) {
  const Eigen::Index dim = v[0][0].rows() * static_cast<Eigen::Index>(x.h_dim());
  Mat out = Mat::Identity(dim, dim);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Mat a = Mat::Identity(dim, dim);
    for (std::size_t j = 0; j < v[i].size(); ++j) a -= oracle::kron(v[i][j].adjoint(), x.rows()[i][j]);
    out = out * a.partialPivLu().inverse();
  }
  return out;
}

// A function with positive real part built from the doubly commuting pair
// (S (x) I, I (x) S) of 4x4 shifts and w = sum c_m e_m (x) e_m:
// f(X) = w^* [2 prod_i (I - V_i^* (x) X_i)^{-1} - I] w + i imag0. Its
// Herglotz data at scale k is mu(R_a^*) = w^* (V/k)_a^* w, mu(I) = 1.
struct KScaling {
  static constexpr int k = 2;
  std::vector<std::vector<Mat>> v;
  Mat w;
  double imag0 = 0.0;
  CbMapData mu;

  explicit KScaling(gen::Rng& rng) {
    const Eigen::Index m = 4;
    Mat shift = Mat::Zero(m, m);
    for (Eigen::Index p = 0; p + 1 < m; ++p) shift(p + 1, p) = 1.0;
    const Mat id = Mat::Identity(m, m);
    v = {{oracle::kron(shift, id)}, {oracle::kron(id, shift)}};
    w = Mat::Zero(m * m, 1);
    for (Eigen::Index p = 0; p < m; ++p) w(p * m + p, 0) = gen::matrix(rng, 1, 1)(0, 0);
    w /= w.norm();
    imag0 = gen::uniform(rng, -1.0, 1.0);

    const std::vector<int> n{1, 1};
    const MultiWord g = MultiWord::identity(n);
    CoeffMap values;
    for (int a1 = 0; a1 < m; ++a1)
      for (int a2 = 0; a2 < m; ++a2) {
        if (a1 + a2 == 0) continue;
        const MultiWord a = oracle::to_word({oracle::Letters(static_cast<std::size_t>(a1), 1), oracle::Letters(static_cast<std::size_t>(a2), 1)}, n);
        Mat t = Mat::Identity(m * m, m * m);
        for (int p = 0; p < a1; ++p) t = t * v[0][0] / double(k);
        for (int p = 0; p < a2; ++p) t = t * v[1][0] / double(k);
        const Mat val = (t * w).adjoint() * w;
        values[{a, g}] = val;
        values[{g, a}] = val.adjoint();
      }
    mu = CbMapData(n, 1, Mat::Identity(1, 1), values, true);
  }

  // Left side by the resolvent; H is one-dimensional.
  cplx f(cplx y1, cplx y2) const {
    const auto y = PolyballPoint::scalars({{y1}, {y2}});
    const Mat r = resolvent_product(v, y);
    return (w.adjoint() * (2.0 * r - Mat::Identity(r.rows(), r.cols())) * w)(0, 0) + cplx(0.0, imag0);
  }
};

inline FockOperator from_dense(const TruncationPtr& t, std::size_t e, const Mat& m) {
  FockOperator op;
  op.truncation = t;
  op.coeff_dim = e;
  op.matrix = m.sparseView();
  return op;
}

// P (p(S)^* q(S)) P computed on a truncation large enough that the
// products are exact, then compressed back to `small`.
inline Mat positive_combination(gen::Rng& rng, const oracle::Basis& small, int degree, std::size_t e) {
  std::vector<int> big_d = small.d;
  for (int& d : big_d) d += degree;
  oracle::Basis big(small.n, big_d);
  const auto eb = static_cast<Eigen::Index>(e);
  const auto dim = static_cast<Eigen::Index>(big.dim());
  auto poly = [&]() {
    Mat p = Mat::Zero(eb * dim, eb * dim);
    for (int term = 0; term < 3; ++term) {
      const MultiWord w = gen::word(rng, small.n, std::vector<int>(small.n.size(), degree));
      Mat wm = oracle::word(big, oracle::to_multi(w), false);
      p += oracle::kron(gen::matrix(rng, eb, eb), wm);
    }
    return p;
  };
  Mat total = Mat::Zero(eb * dim, eb * dim);
  for (int term = 0; term < 2; ++term) total += poly().adjoint() * poly();
  const auto sd = static_cast<Eigen::Index>(small.dim());
  Mat out(eb * sd, eb * sd);
  for (Eigen::Index a = 0; a < eb; ++a)
    for (Eigen::Index c = 0; c < eb; ++c)
      for (Eigen::Index r = 0; r < sd; ++r)
        for (Eigen::Index q = 0; q < sd; ++q) {
          const auto br = static_cast<Eigen::Index>(big.index.at(small.words[static_cast<std::size_t>(r)]));
          const auto bq = static_cast<Eigen::Index>(big.index.at(small.words[static_cast<std::size_t>(q)]));
          out(a * sd + r, c * sd + q) = total(a * dim + br, c * dim + bq);
        }
  return out;
}

}  // namespace fixture
