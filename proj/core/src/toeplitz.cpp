#include "polyball/toeplitz.hpp"

#include <algorithm>
#include <cmath>

namespace polyball {

MultiToeplitzSymbol::MultiToeplitzSymbol(std::vector<int> n, std::size_t e_dim)
    : n_(std::move(n)), e_dim_(e_dim) {
  if (n_.empty()) throw ConfigError("symbol needs k >= 1");
  if (e_dim_ == 0) throw ConfigError("symbol coefficient dimension must be >= 1");
}

void MultiToeplitzSymbol::set(const MultiWord& a, const MultiWord& b, const Mat& m) {
  if (a.shape() != n_ || b.shape() != n_) throw ConfigError("symbol key shape mismatch");
  if (!lambda_membership(a, b)) throw ConfigError("(" + a.str() + "; " + b.str() + ") is not a Lambda pair");
  const auto e = static_cast<Eigen::Index>(e_dim_);
  if (m.rows() != e || m.cols() != e) throw ConfigError("symbol coefficient has wrong size");
  coeffs_[{a, b}] = m;
}

void MultiToeplitzSymbol::add(const MultiWord& a, const MultiWord& b, const Mat& m) {
  auto it = coeffs_.find({a, b});
  if (it == coeffs_.end())
    set(a, b, m);
  else
    it->second += m;
}

Mat MultiToeplitzSymbol::at(const MultiWord& a, const MultiWord& b) const {
  auto it = coeffs_.find({a, b});
  const auto e = static_cast<Eigen::Index>(e_dim_);
  return it == coeffs_.end() ? Mat::Zero(e, e) : it->second;
}

std::size_t MultiToeplitzSymbol::max_total_length() const {
  std::size_t out = 0;
  for (const auto& [key, m] : coeffs_) out = std::max(out, key.first.total_length() + key.second.total_length());
  return out;
}

std::vector<int> MultiToeplitzSymbol::factor_degrees() const {
  std::vector<int> d(n_.size(), 0);
  for (const auto& [key, m] : coeffs_)
    for (std::size_t i = 0; i < n_.size(); ++i)
      d[i] = std::max(d[i], static_cast<int>(std::max(key.first.part(i).length(), key.second.part(i).length())));
  return d;
}

bool MultiToeplitzSymbol::hermitian_symmetric(double tol) const {
  for (const auto& [key, m] : coeffs_) {
    if ((at(key.second, key.first) - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

MultiToeplitzSymbol MultiToeplitzSymbol::radial(double r) const {
  MultiToeplitzSymbol out = *this;
  for (auto& [key, m] : out.coeffs_)
    m *= std::pow(r, static_cast<double>(key.first.total_length() + key.second.total_length()));
  return out;
}

namespace {

double max_window_entry(const SpMat& d, const Window& w, std::size_t dim) {
  double worst = 0.0;
  for (Eigen::Index col = 0; col < d.outerSize(); ++col) {
    if (!w.contains_index(static_cast<std::size_t>(col) % dim)) continue;
    for (SpMat::InnerIterator it(d, col); it; ++it) {
      if (!w.contains_index(static_cast<std::size_t>(it.row()) % dim)) continue;
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

}  // namespace

ToeplitzReport is_k_multi_toeplitz(const FockOperator& t, double tol) {
  const FockTruncation& tr = *t.truncation;
  if (static_cast<std::size_t>(t.matrix.rows()) != t.size() || t.matrix.rows() != t.matrix.cols())
    throw ConfigError("operator shape does not match its truncation");
  ToeplitzReport rep;
  for (std::size_t i = 0; i < tr.k(); ++i) {
    if (tr.degrees()[i] == 0) continue;  // empty window
    std::vector<int> budget(tr.k(), 0);
    budget[i] = 1;
    const Window w = exact_window(t.truncation, budget);
    const int fi = static_cast<int>(i + 1);
    for (int s = 1; s <= tr.n()[i]; ++s) {
      const SpMat rs_adj = SpMat(lift(creation_matrix(tr, Side::right, fi, s), t.coeff_dim).adjoint());
      for (int u = 1; u <= tr.n()[i]; ++u) {
        const SpMat ru = lift(creation_matrix(tr, Side::right, fi, u), t.coeff_dim);
        SpMat d = rs_adj * t.matrix * ru;
        if (s == u) d -= t.matrix;
        rep.max_violation = std::max(rep.max_violation, max_window_entry(d, w, tr.dim()));
      }
    }
  }
  rep.pass = rep.max_violation <= tol;
  return rep;
}

double toeplitz_structure_violation(const FockOperator& t) {
  const FockTruncation& tr = *t.truncation;
  const Mat m = t.dense();
  const auto dim = static_cast<Eigen::Index>(tr.dim());
  const auto e = static_cast<Eigen::Index>(t.coeff_dim);
  double worst = 0.0;
  for (Eigen::Index w = 0; w < dim; ++w) {
    for (Eigen::Index v = 0; v < dim; ++v) {
      const auto c = compare(Side::right, tr.word(static_cast<std::size_t>(w)), tr.word(static_cast<std::size_t>(v)));
      Eigen::Index pw = -1, pv = -1;
      if (c.comparable) {
        pw = static_cast<Eigen::Index>(tr.index(c.c_plus));
        pv = static_cast<Eigen::Index>(tr.index(c.c_minus));
      }
      for (Eigen::Index l = 0; l < e; ++l)
        for (Eigen::Index h = 0; h < e; ++h) {
          const cplx val = m(l * dim + w, h * dim + v);
          const cplx ref = c.comparable ? m(l * dim + pw, h * dim + pv) : cplx(0.0);
          worst = std::max(worst, std::abs(val - ref));
        }
    }
  }
  return worst;
}

Mat fourier_coefficient(const FockOperator& t, const MultiWord& a, const MultiWord& b) {
  if (!lambda_membership(a, b)) throw ConfigError("(" + a.str() + "; " + b.str() + ") is not a Lambda pair");
  const FockTruncation& tr = *t.truncation;
  if (!tr.admissible(a) || !tr.admissible(b)) throw ConfigError("words exceed the truncation");
  const auto dim = static_cast<Eigen::Index>(tr.dim());
  const auto ia = static_cast<Eigen::Index>(tr.index(a));
  const auto ib = static_cast<Eigen::Index>(tr.index(b));
  const auto e = static_cast<Eigen::Index>(t.coeff_dim);
  Mat out(e, e);
  for (Eigen::Index l = 0; l < e; ++l)
    for (Eigen::Index h = 0; h < e; ++h) out(l, h) = t.matrix.coeff(l * dim + ia, h * dim + ib);
  return out;
}

MultiToeplitzSymbol extract_symbol(const FockOperator& t, int max_total_len, double drop_tol) {
  const FockTruncation& tr = *t.truncation;
  int reach = 0;
  for (int d : tr.degrees()) reach += 2 * d;
  if (max_total_len < 0 || max_total_len > reach) throw ConfigError("max_total_len outside the truncation");
  MultiToeplitzSymbol sym(tr.n(), t.coeff_dim);
  for (const auto& [a, b] : lambda_pairs(tr.n(), max_total_len, tr.degrees())) {
    Mat c = fourier_coefficient(t, a, b);
    if (c.size() == 0 || c.cwiseAbs().maxCoeff() <= drop_tol) continue;
    sym.set(a, b, c);
  }
  return sym;
}

Mat evaluate_symbol(const MultiToeplitzSymbol& sym, const PolyballPoint& x) {
  if (x.n() != sym.n()) throw ConfigError("point shape does not match symbol");
  const auto e = static_cast<Eigen::Index>(sym.e_dim());
  const auto h = static_cast<Eigen::Index>(x.h_dim());
  Mat out = Mat::Zero(e * h, e * h);
  MonomialCache cache(x);
  for (const auto& [key, a] : sym.coeffs()) {
    const Mat term = cache.term(key.first, key.second);
    for (Eigen::Index p = 0; p < e; ++p)
      for (Eigen::Index q = 0; q < e; ++q)
        if (a(p, q) != cplx(0.0)) out.block(p * h, q * h, h, h) += a(p, q) * term;
  }
  return out;
}

FockOperator symbol_operator(const MultiToeplitzSymbol& sym, const TruncationPtr& t, double r) {
  if (t->n() != sym.n()) throw ConfigError("truncation shape does not match symbol");
  FockOperator op;
  op.truncation = t;
  op.coeff_dim = sym.e_dim();
  const auto size = static_cast<Eigen::Index>(op.size());
  op.matrix = SpMat(size, size);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const auto& [key, a] : sym.coeffs()) {
    if (!t->admissible(key.first) || !t->admissible(key.second)) continue;  // compresses to 0
    const double w = std::pow(r, static_cast<double>(key.first.total_length() + key.second.total_length()));
    kron_triplets(w * a, word_matrix(*t, Side::left, key.first, key.second), trips);
  }
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  return op;
}

}  // namespace polyball
