#include "polyball/naimark.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polyball/point.hpp"

namespace polyball {

namespace {

using Index = Eigen::Index;

MultiWord reverse_all(const MultiWord& w) { return w.reversed(); }

// Columns of f belonging to the listed word positions, all coefficients.
Mat gather(const Mat& f, const std::vector<std::size_t>& pos, std::size_t n_words, std::size_t e) {
  Mat out(f.rows(), static_cast<Index>(pos.size() * e));
  Index col = 0;
  for (std::size_t c = 0; c < e; ++c)
    for (std::size_t p : pos) out.col(col++) = f.col(static_cast<Index>(c * n_words + p));
  return out;
}

Mat pinv(const Mat& m, double rel_tol) {
  if (m.cols() == 0) return Mat::Zero(0, m.rows());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = s.size() > 0 ? rel_tol * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index p = 0; p < s.size(); ++p)
    if (s(p) > cut) inv(p) = 1.0 / s(p);
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

// Singular-value cut matching an eigenvalue cut rank_tol on the Gram matrix.
double sv_tol(double rank_tol) { return 0.5 * std::sqrt(rank_tol); }

// Words of the box whose factor-i part leaves room for `shrink[i]` more
// letters and whose total length is at most max_total.
std::vector<std::size_t> window_positions(const std::vector<MultiWord>& words, const std::vector<int>& caps,
                                          const std::vector<int>& shrink, int max_total) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < words.size(); ++p) {
    const MultiWord& w = words[p];
    if (static_cast<int>(w.total_length()) > max_total) continue;
    bool ok = true;
    for (std::size_t i = 0; i < w.k(); ++i)
      if (static_cast<int>(w.part(i).length()) > caps[i] - shrink[i]) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

}  // namespace

ToeplitzKernel::ToeplitzKernel(Side side, std::vector<int> n, std::size_t e_dim, int max_len, CoeffMap generator,
                               std::vector<int> caps)
    : side_(side), n_(std::move(n)), e_dim_(e_dim), max_len_(max_len), caps_(std::move(caps)), gen_(std::move(generator)) {
  if (n_.empty()) throw ConfigError("kernel needs k >= 1");
  for (int ni : n_)
    if (ni < 1) throw ConfigError("kernel alphabet sizes must be >= 1");
  if (e_dim_ == 0) throw ConfigError("kernel coefficient dimension must be >= 1");
  if (max_len_ < 0) throw ConfigError("kernel max_len must be >= 0");
  if (caps_.empty()) caps_.assign(n_.size(), max_len_);
  if (caps_.size() != n_.size()) throw ConfigError("kernel caps do not match k");
  for (int& c : caps_) c = std::clamp(c, 0, max_len_);
  const auto e = static_cast<Index>(e_dim_);
  for (const auto& [key, m] : gen_) {
    if (key.first.shape() != n_ || key.second.shape() != n_) throw ConfigError("generator key shape mismatch");
    if (!lambda_membership(key.first, key.second))
      throw ConfigError("generator key (" + key.first.str() + "; " + key.second.str() + ") is not a Lambda pair");
    if (m.rows() != e || m.cols() != e) throw ConfigError("generator value has wrong size");
  }
}

Mat ToeplitzKernel::gen(const MultiWord& a, const MultiWord& b) const {
  auto it = gen_.find({a, b});
  const auto e = static_cast<Index>(e_dim_);
  return it == gen_.end() ? Mat::Zero(e, e) : it->second;
}

Mat ToeplitzKernel::value(const MultiWord& s, const MultiWord& w) const {
  const auto c = compare(side_, s, w);
  if (!c.comparable) return Mat::Zero(static_cast<Index>(e_dim_), static_cast<Index>(e_dim_));
  return gen(c.c_plus, c.c_minus);
}

std::vector<MultiWord> ToeplitzKernel::words() const { return multiwords_in_box(n_, caps_, max_len_); }

Mat ToeplitzKernel::gram() const {
  const auto ws = words();
  const auto nw = static_cast<Index>(ws.size());
  const auto e = static_cast<Index>(e_dim_);
  Mat g = Mat::Zero(e * nw, e * nw);
  for (Index s = 0; s < nw; ++s)
    for (Index w = 0; w < nw; ++w) {
      const auto c = compare(side_, ws[static_cast<std::size_t>(s)], ws[static_cast<std::size_t>(w)]);
      if (!c.comparable) continue;
      auto it = gen_.find({c.c_plus, c.c_minus});
      if (it == gen_.end()) continue;
      for (Index a = 0; a < e; ++a)
        for (Index b = 0; b < e; ++b) g(a * nw + s, b * nw + w) = it->second(a, b);
    }
  return g;
}

ToeplitzKernel ToeplitzKernel::reversed() const {
  CoeffMap g;
  for (const auto& [key, m] : gen_) g.emplace(LambdaPair{reverse_all(key.first), reverse_all(key.second)}, m);
  return ToeplitzKernel(side_ == Side::left ? Side::right : Side::left, n_, e_dim_, max_len_, std::move(g), caps_);
}

ToeplitzKernel kernel_from_generator(Side side, std::vector<int> n, std::size_t e_dim, const CoeffMap& gen,
                                     int max_len, std::vector<int> caps) {
  CoeffMap full;
  for (const auto& [key, m] : gen) {
    if (key.first.shape() != n || key.second.shape() != n) throw ConfigError("generator key shape mismatch");
    auto mirror = gen.find({key.second, key.first});
    if (mirror != gen.end()) {
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      if (mirror->second.rows() != m.cols() || mirror->second.cols() != m.rows() ||
          (mirror->second - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ConfigError("generator is not Hermitian at (" + key.first.str() + "; " + key.second.str() + ")");
    }
    full[key] = m;
    full.emplace(LambdaPair{key.second, key.first}, m.adjoint());
  }
  const MultiWord id = MultiWord::identity(n);
  auto unit = full.find({id, id});
  if (unit == full.end()) throw ConfigError("generator value at (g0; g0) is missing");
  const auto e = static_cast<Index>(e_dim);
  if (unit->second.rows() != e || unit->second.cols() != e ||
      (unit->second - Mat::Identity(e, e)).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError("generator value at (g0; g0) must be the identity");
  return ToeplitzKernel(side, std::move(n), e_dim, max_len, std::move(full), std::move(caps));
}

PsdReport kernel_is_psd(const ToeplitzKernel& k, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(k.gram(), Eigen::EigenvaluesOnly);
  PsdReport rep;
  rep.min_eig = es.eigenvalues()(0);
  rep.max_eig = es.eigenvalues()(es.eigenvalues().size() - 1);
  rep.psd = rep.min_eig >= -tol;
  return rep;
}

Mat NaimarkDilation::apply_word(const MultiWord& w, const Mat& x) const {
  Mat out = x;
  for (std::size_t i = w.k(); i-- > 0;) {
    const auto& letters = w.part(i).letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      out = v[i][static_cast<std::size_t>(*it - 1)] * out;
  }
  return out;
}

NaimarkDilation naimark_dilate(const ToeplitzKernel& kernel, double rank_tol, double psd_tol) {
  if (kernel.side() == Side::right) {
    NaimarkDilation d = naimark_dilate(kernel.reversed(), rank_tol, psd_tol);
    d.side = Side::right;
    return d;
  }
  if (kernel.max_len() < 1) throw ConfigError("dilation needs max_len >= 1");
  const auto ws = kernel.words();
  const std::size_t nw = ws.size();
  const std::size_t e = kernel.e_dim();
  const Mat g = kernel.gram();
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double lmax = lam(lam.size() - 1);
  if (lam(0) < -psd_tol) throw PsdError("kernel is not positive semidefinite", lam(0));

  std::vector<Index> keep;
  double discarded = 0.0;
  for (Index p = 0; p < lam.size(); ++p) {
    if (lam(p) > rank_tol * lmax)
      keep.push_back(p);
    else
      discarded = std::max(discarded, std::abs(lam(p)));
  }
  // G = F^* F with F = D^{1/2} U^* restricted to kept eigenvalues.
  Mat f(static_cast<Index>(keep.size()), g.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    f.row(static_cast<Index>(r)) = std::sqrt(lam(keep[r])) * es.eigenvectors().col(keep[r]).adjoint();

  NaimarkDilation d;
  d.side = Side::left;
  d.n = kernel.n();
  d.e_dim = e;
  d.space_dim = keep.size();
  d.max_len = kernel.max_len();
  d.window_len = kernel.max_len() - 1;
  d.discarded_eig = discarded;
  const std::vector<std::size_t> id_pos{0};  // words() starts with the identity
  d.embedding = gather(f, id_pos, nw, e);

  std::map<MultiWord, std::size_t> pos_of;
  for (std::size_t p = 0; p < nw; ++p) pos_of.emplace(ws[p], p);
  const auto& caps = kernel.caps();
  const std::size_t k = kernel.n().size();
  d.v.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> shrink(k, 0);
    shrink[i] = 1;
    const auto dom = window_positions(ws, caps, shrink, kernel.max_len() - 1);
    const Mat dom_pinv = pinv(gather(f, dom, nw, e), sv_tol(rank_tol));
    for (int j = 1; j <= kernel.n()[i]; ++j) {
      std::vector<std::size_t> tgt;
      tgt.reserve(dom.size());
      for (std::size_t p : dom) {
        MultiWord w = ws[p];
        w.part(i) = Word::generator(kernel.n()[i], j) * w.part(i);
        tgt.push_back(pos_of.at(w));
      }
      d.v[i].push_back(gather(f, tgt, nw, e) * dom_pinv);
    }
  }
  return d;
}

DilationReport dilation_verify(const NaimarkDilation& d, const ToeplitzKernel& kernel, double rank_tol) {
  if (d.n != kernel.n() || d.e_dim != kernel.e_dim()) throw ConfigError("dilation and kernel shapes differ");
  if (d.side != kernel.side()) throw ConfigError("dilation and kernel sides differ");
  const ToeplitzKernel left = kernel.side() == Side::right ? kernel.reversed() : kernel;
  const auto ws = left.words();
  const std::size_t nw = ws.size();
  const std::size_t e = d.e_dim;
  const std::size_t k = d.n.size();
  const Index dim = static_cast<Index>(d.space_dim);

  DilationReport rep;
  rep.space_dim = d.space_dim;

  // Images V_w E, the same columns the Gram factorization produced.
  Mat images(dim, static_cast<Index>(nw * e));
  for (std::size_t p = 0; p < nw; ++p) {
    const Mat vw = d.apply_word(ws[p], d.embedding);
    for (std::size_t c = 0; c < e; ++c) images.col(static_cast<Index>(c * nw + p)) = vw.col(static_cast<Index>(c));
  }
  const Mat g = images.adjoint() * images;
  rep.reproduction_error = (g - left.gram()).cwiseAbs().maxCoeff();
  rep.embedding_defect =
      (d.embedding.adjoint() * d.embedding - Mat::Identity(static_cast<Index>(e), static_cast<Index>(e)))
          .cwiseAbs()
          .maxCoeff();

  const double tol = sv_tol(rank_tol);
  const auto& caps = left.caps();
  rep.isometry_defect.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> shrink(k, 0);
    shrink[i] = 1;
    const Mat q = column_basis(gather(images, window_positions(ws, caps, shrink, d.window_len), nw, e), tol);
    const Index m = q.cols();
    for (std::size_t j = 0; j < d.v[i].size(); ++j)
      for (std::size_t s = 0; s < d.v[i].size(); ++s) {
        Mat c = q.adjoint() * d.v[i][j].adjoint() * d.v[i][s] * q;
        if (j == s) c -= Mat::Identity(m, m);
        rep.isometry_defect[i] = std::max(rep.isometry_defect[i], m > 0 ? spectral_norm(c) : 0.0);
      }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t i2 = i + 1; i2 < k; ++i2) {
      std::vector<int> shrink(k, 0);
      shrink[i] = 1;
      shrink[i2] = 1;
      const Mat q = column_basis(gather(images, window_positions(ws, caps, shrink, d.window_len - 1), nw, e), tol);
      if (q.cols() == 0) continue;
      for (const Mat& a : d.v[i])
        for (const Mat& b : d.v[i2])
          rep.commutator_norm = std::max(rep.commutator_norm, spectral_norm((a * b - b * a) * q));
    }

  rep.span_dim = static_cast<std::size_t>(column_basis(images, tol).cols());
  rep.dimension_gap = static_cast<long>(rep.space_dim) - static_cast<long>(rep.span_dim);
  rep.minimal = rep.dimension_gap == 0;
  return rep;
}

Mat column_basis(const Mat& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Mat::Zero(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace polyball
