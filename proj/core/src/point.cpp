#include "polyball/point.hpp"

#include <algorithm>
#include <cmath>

namespace polyball {

PolyballPoint::PolyballPoint(std::vector<std::vector<Mat>> x) : x_(std::move(x)) {
  if (x_.empty()) throw ConfigError("polyball point needs k >= 1");
  bool first = true;
  for (const auto& row : x_) {
    if (row.empty()) throw ConfigError("every factor needs n_i >= 1 operators");
    for (const auto& m : row) {
      if (m.rows() != m.cols()) throw ConfigError("operators must be square");
      if (first) {
        h_dim_ = static_cast<std::size_t>(m.rows());
        first = false;
      } else if (static_cast<std::size_t>(m.rows()) != h_dim_) {
        throw ConfigError("operators must share one dimension");
      }
    }
  }
}

PolyballPoint PolyballPoint::zero(const std::vector<int>& n, std::size_t h_dim) {
  const auto h = static_cast<Eigen::Index>(h_dim);
  std::vector<std::vector<Mat>> x;
  for (int ni : n) x.emplace_back(static_cast<std::size_t>(ni), Mat::Zero(h, h));
  return PolyballPoint(std::move(x));
}

PolyballPoint PolyballPoint::scalars(const std::vector<std::vector<cplx>>& z) {
  std::vector<std::vector<Mat>> x;
  for (const auto& row : z) {
    std::vector<Mat> r;
    for (cplx v : row) r.push_back(Mat::Constant(1, 1, v));
    x.push_back(std::move(r));
  }
  return PolyballPoint(std::move(x));
}

PolyballPoint PolyballPoint::shifts(const FockTruncation& t, double r, Side side) {
  std::vector<std::vector<Mat>> x(t.k());
  for (std::size_t i = 0; i < t.k(); ++i)
    for (int j = 1; j <= t.n()[i]; ++j)
      x[i].push_back(r * Mat(creation_matrix(t, side, static_cast<int>(i + 1), j)));
  return PolyballPoint(std::move(x));
}

std::vector<int> PolyballPoint::n() const {
  std::vector<int> n;
  for (const auto& row : x_) n.push_back(static_cast<int>(row.size()));
  return n;
}

PolyballPoint PolyballPoint::scaled(double r) const {
  PolyballPoint out = *this;
  for (auto& row : out.x_)
    for (auto& m : row) m *= r;
  return out;
}

Mat PolyballPoint::factor_monomial(std::size_t i, const Word& w) const {
  const auto h = static_cast<Eigen::Index>(h_dim_);
  Mat m = Mat::Identity(h, h);
  for (int j : w.letters()) m = m * x_[i][static_cast<std::size_t>(j - 1)];
  return m;
}

Mat PolyballPoint::monomial(const MultiWord& a) const {
  if (a.shape() != n()) throw ConfigError("multiword shape does not match point");
  const auto h = static_cast<Eigen::Index>(h_dim_);
  Mat m = Mat::Identity(h, h);
  for (std::size_t i = 0; i < k(); ++i) m = m * factor_monomial(i, a.part(i));
  return m;
}

double PolyballPoint::cross_commutator_norm() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t l = i + 1; l < k(); ++l)
      for (const auto& a : x_[i])
        for (const auto& b : x_[l]) worst = std::max(worst, spectral_norm(a * b - b * a));
  return worst;
}

std::vector<double> PolyballPoint::row_norms() const {
  std::vector<double> out;
  const auto h = static_cast<Eigen::Index>(h_dim_);
  for (const auto& row : x_) {
    Mat s = Mat::Zero(h, h);
    for (const auto& m : row) s += m * m.adjoint();
    out.push_back(std::sqrt(spectral_norm(s)));
  }
  return out;
}

const Mat& MonomialCache::factor(std::size_t i, const Word& w) {
  auto& table = factor_[i];
  if (auto it = table.find(w); it != table.end()) return it->second;
  Mat m;
  if (w.empty()) {
    const auto h = static_cast<Eigen::Index>(x_->h_dim());
    m = Mat::Identity(h, h);
  } else {
    // X_{i,w} = X_{i,w'} X_{i,j} with w = w' g_j.
    const Word head = w.drop_suffix(Word::generator(w.alphabet(), w.letters().back()));
    m = factor(i, head) * (*x_)(static_cast<int>(i + 1), w.letters().back());
  }
  return table.emplace(w, std::move(m)).first->second;
}

Mat MonomialCache::monomial(const MultiWord& a) {
  Mat m = factor(0, a.part(0));
  for (std::size_t i = 1; i < a.k(); ++i) m = m * factor(i, a.part(i));
  return m;
}

Mat MonomialCache::term(const MultiWord& a, const MultiWord& b) {
  return monomial(a) * monomial(b).adjoint();
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of the smaller Gram product. Eigen 3.4.0's complex
  // BDCSVD returns wrong singular values on some inputs.
  const Mat g = m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Mat psd_sqrt(const Mat& m, double clamp) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index p = 0; p < ev.size(); ++p) ev(p) = ev(p) <= clamp ? 0.0 : std::sqrt(ev(p));
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Mat& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hermitian + hermitian.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace polyball
