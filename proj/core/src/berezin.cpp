#include "polyball/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "polyball/words.hpp"

namespace polyball {

Mat apply_phi(const PolyballPoint& x, std::size_t i, const Mat& y) {
  Mat out = Mat::Zero(y.rows(), y.cols());
  for (const auto& m : x.rows()[i]) out += m * y * m.adjoint();
  return out;
}

Mat apply_defect(const PolyballPoint& x, const Mat& y, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> ord = order;
  if (ord.empty()) {
    ord.resize(x.k());
    std::iota(ord.begin(), ord.end(), 0);
  }
  if (ord.size() != x.k()) throw ConfigError("defect order must list every factor once");
  Mat out = y;
  // Innermost map acts first.
  for (std::size_t p = ord.size(); p-- > 0;) out = out - apply_phi(x, ord[p], out);
  return out;
}

Mat defect(const PolyballPoint& x) {
  const auto h = static_cast<Eigen::Index>(x.h_dim());
  return apply_defect(x, Mat::Identity(h, h));
}

MembershipReport in_polyball(const PolyballPoint& x, double margin, double commute_tol) {
  MembershipReport rep;
  rep.row_norms = x.row_norms();
  rep.defect_min_eig = min_eigenvalue(defect(x));
  rep.commutator_norm = x.cross_commutator_norm();
  rep.member = rep.defect_min_eig > margin && rep.commutator_norm <= commute_tol;
  for (double r : rep.row_norms) rep.member = rep.member && r < 1.0 - margin;
  return rep;
}

SpectralRadiusReport spectral_radius(const PolyballPoint& x, int max_p) {
  if (max_p < 2) throw ConfigError("spectral radius needs max_p >= 2");
  SpectralRadiusReport rep;
  const auto h = static_cast<Eigen::Index>(x.h_dim());
  const double k = static_cast<double>(x.k());
  // M_p = Phi_1^p(...Phi_k^p(I)) = sum over |a_i| = p of X_a X_a^*.
  for (int p = 1; p <= max_p; ++p) {
    Mat m = Mat::Identity(h, h);
    for (std::size_t i = x.k(); i-- > 0;)
      for (int q = 0; q < p; ++q) m = apply_phi(x, i, m);
    const double norm = spectral_norm(m);
    const double val = norm <= 0.0 ? 0.0 : std::pow(norm, 1.0 / (2.0 * k * p));
    rep.iterates.push_back(val);
  }
  rep.value = *std::max_element(rep.iterates.begin(), rep.iterates.end());
  rep.last = rep.iterates.back();
  rep.previous = rep.iterates[rep.iterates.size() - 2];
  return rep;
}

std::vector<double> phi_power_roots(const PolyballPoint& x, std::size_t i, int max_p) {
  const auto h = static_cast<Eigen::Index>(x.h_dim());
  std::vector<double> s;
  Mat m = Mat::Identity(h, h);
  s.push_back(1.0);
  for (int p = 1; p <= max_p; ++p) {
    m = apply_phi(x, i, m);
    s.push_back(std::sqrt(spectral_norm(m)));
  }
  return s;
}

namespace {

// sum_{p >= 0} s(p), bounding the tail past the tabulated range by
// s(P) rho^q with rho = s(1).
double phi_root_series(const std::vector<double>& s) {
  double sum = std::accumulate(s.begin(), s.end(), 0.0);
  const double last = s.back();
  if (last <= 0.0) return sum;
  const double rho = s[1];
  if (rho >= 1.0) return INFINITY;
  return sum + last * rho / (1.0 - rho);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw DomainError(std::string(what) + " diverges: a row norm is >= 1 and the tuple is not nilpotent");
}

}  // namespace

Mat BerezinKernel::matrix() const {
  const auto h = static_cast<Eigen::Index>(h_dim);
  const auto dim = static_cast<Eigen::Index>(blocks.size());
  Mat out(h * dim, h);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (Eigen::Index x = 0; x < h; ++x) out.row(x * dim + b) = blocks[static_cast<std::size_t>(b)].row(x);
  return out;
}

BerezinKernel berezin_kernel(const PolyballPoint& x, const TruncationPtr& t) {
  if (x.n() != t->n()) throw ConfigError("point shape does not match truncation");
  BerezinKernel k;
  k.truncation = t;
  k.h_dim = x.h_dim();
  const Mat d = defect(x);
  k.defect_sqrt = psd_sqrt(d);
  {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    k.defect_rank = static_cast<std::size_t>((es.eigenvalues().array() > 1e-12 * top).count());
  }
  double tail_sq = 0.0;
  for (std::size_t i = 0; i < x.k(); ++i) {
    const auto s = phi_power_roots(x, i, t->degrees()[i] + 1);
    const double tail = s.back();
    if (tail > 0.0 && s[1] >= 1.0) require_finite(INFINITY, "Berezin kernel");
    tail_sq += tail * tail;
  }
  k.tail_bound = std::sqrt(tail_sq);
  MonomialCache cache(x);
  k.blocks.reserve(t->dim());
  for (const auto& w : t->basis()) k.blocks.push_back(k.defect_sqrt * cache.monomial(w).adjoint());
  return k;
}

Mat berezin_transform(const FockOperator& g, const BerezinKernel& k) {
  if (!(*g.truncation == *k.truncation)) throw ConfigError("operator and kernel use different truncations");
  const auto h = static_cast<Eigen::Index>(k.h_dim);
  const auto e = static_cast<Eigen::Index>(g.coeff_dim);
  const std::size_t dim = k.truncation->dim();
  Mat out = Mat::Zero(e * h, e * h);
  for (Eigen::Index col = 0; col < g.matrix.outerSize(); ++col) {
    const auto c = static_cast<std::size_t>(col);
    const auto hh = static_cast<Eigen::Index>(c / dim);
    const Mat& kg = k.blocks[c % dim];
    for (SpMat::InnerIterator it(g.matrix, col); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto l = static_cast<Eigen::Index>(r / dim);
      out.block(l * h, hh * h, h, h) += it.value() * (k.blocks[r % dim].adjoint() * kg);
    }
  }
  return out;
}

Mat berezin_transform(const FockOperator& g, const PolyballPoint& x) {
  return berezin_transform(g, berezin_kernel(x, g.truncation));
}

double moment_tail_bound(const PolyballPoint& x, const FockTruncation& t, const MultiWord& a,
                         const MultiWord& b) {
  double middle = 0.0;
  for (std::size_t i = 0; i < x.k(); ++i) {
    const int m = static_cast<int>(std::max(a.part(i).length(), b.part(i).length()));
    const int q = t.degrees()[i] - m + 1;
    if (q <= 0) {
      middle += 1.0;
      continue;
    }
    const auto s = phi_power_roots(x, i, q);
    middle += s.back() * s.back();
  }
  // The analytic bound is attained for scalar rows; add the rounding of a
  // sum over the truncation.
  const double rounding = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(t.dim());
  return spectral_norm(x.monomial(a)) * spectral_norm(x.monomial(b)) * (middle + rounding);
}

OperatorTuple creation_tuple(const FockTruncation& t, Side side) {
  OperatorTuple v(t.k());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (int j = 1; j <= t.n()[i]; ++j) v[i].push_back(creation_matrix(t, side, static_cast<int>(i + 1), j));
  return v;
}

OperatorTuple to_tuple(const std::vector<std::vector<Mat>>& v) {
  OperatorTuple out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& m : v[i]) out[i].push_back(m.sparseView());
  return out;
}

Mat cauchy_apply(const OperatorTuple& v, const PolyballPoint& x, const Mat& rhs) {
  if (v.size() != x.k()) throw ConfigError("operator tuple and point differ in k");
  const auto h = static_cast<Eigen::Index>(x.h_dim());
  Eigen::Index kdim = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].size() != x.rows()[i].size()) throw ConfigError("operator tuple and point differ in n_i");
    for (const auto& m : v[i]) {
      if (kdim < 0) kdim = m.rows();
      if (m.rows() != kdim || m.cols() != kdim) throw ConfigError("tuple operators must be square of one size");
    }
  }
  const Eigen::Index size = h * kdim;
  if (rhs.rows() != size) throw ConfigError("right-hand side has wrong height");
  Mat y = rhs;
  for (std::size_t i = x.k(); i-- > 0;) {
    SpMat a(size, size);
    a.setIdentity();
    for (std::size_t j = 0; j < v[i].size(); ++j)
      a -= coefficient_kron(x.rows()[i][j].adjoint(), v[i][j]);
    a.makeCompressed();
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
      std::ostringstream os;
      os << "resolvent factor " << i + 1 << " is singular";
      if (size <= 512) {
        Eigen::JacobiSVD<Mat> svd{Mat(a)};
        os << " (min singular value " << svd.singularValues().minCoeff() << ")";
      }
      throw DomainError(os.str());
    }
    y = lu.solve(y);
  }
  const Mat d = psd_sqrt(defect(x));
  return coefficient_kron(d, [&] {
           SpMat id(kdim, kdim);
           id.setIdentity();
           return id;
         }()) * y;
}

Mat cauchy_operator(const OperatorTuple& v, const PolyballPoint& x) {
  Eigen::Index kdim = v.at(0).at(0).rows();
  const Eigen::Index size = static_cast<Eigen::Index>(x.h_dim()) * kdim;
  return cauchy_apply(v, x, Mat::Identity(size, size));
}

double cauchy_tail_bound(const PolyballPoint& x, const std::vector<int>& window_caps,
                         const std::vector<int>& degrees) {
  if (window_caps.size() != x.k() || degrees.size() != x.k()) throw ConfigError("caps length must equal k");
  double full = 1.0, box = 1.0;
  for (std::size_t i = 0; i < x.k(); ++i) {
    const int span = degrees[i] - window_caps[i];
    if (span < 0) throw ConfigError("window exceeds the truncation");
    const auto s = phi_power_roots(x, i, span + 1);
    double in_box = 0.0;
    for (int p = 0; p <= span; ++p) in_box += s[static_cast<std::size_t>(p)];
    const double total = phi_root_series(s);
    require_finite(total, "Cauchy operator");
    full *= total;
    box *= in_box;
  }
  return spectral_norm(psd_sqrt(defect(x))) * std::max(0.0, full - box);
}

SeriesOperator poisson_kernel(const PolyballPoint& x, const TruncationPtr& t) {
  if (x.n() != t->n()) throw ConfigError("point shape does not match truncation");
  double full = 1.0, kept = 1.0;
  for (std::size_t i = 0; i < x.k(); ++i) {
    const auto s = phi_power_roots(x, i, t->degrees()[i] + 1);
    double in_box = 0.0;
    for (int p = 1; p <= t->degrees()[i]; ++p) in_box += s[static_cast<std::size_t>(p)];
    const double total = phi_root_series(s) - 1.0;
    require_finite(total, "Poisson kernel");
    full *= 1.0 + 2.0 * total;
    kept *= 1.0 + 2.0 * in_box;
  }
  SeriesOperator out;
  out.tail_bound = std::max(0.0, full - kept);
  out.op.truncation = t;
  out.op.coeff_dim = x.h_dim();
  const auto size = static_cast<Eigen::Index>(out.op.size());
  out.op.matrix = SpMat(size, size);
  int reach = 0;
  for (int d : t->degrees()) reach += d;
  MonomialCache cache(x);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const auto& [a, b] : lambda_pairs(t->n(), reach, t->degrees())) {
    // R_{~a}^* R_{~b}: append b, strip the suffix a (commuting on Lambda).
    kron_triplets(cache.term(a, b), word_matrix(*t, Side::right, b, a), trips);
  }
  out.op.matrix.setFromTriplets(trips.begin(), trips.end());
  out.op.self_adjoint = true;
  return out;
}

}  // namespace polyball
