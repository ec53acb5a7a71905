#include "polyball/fock.hpp"

#include <algorithm>

namespace polyball {

FockTruncation::FockTruncation(std::vector<int> n, std::vector<int> degrees)
    : n_(std::move(n)), degrees_(std::move(degrees)) {
  if (n_.empty()) throw ConfigError("truncation needs k >= 1");
  if (n_.size() != degrees_.size()) throw ConfigError("n and degrees must have equal length");
  for (std::size_t i = 0; i < n_.size(); ++i) {
    if (n_[i] < 1) throw ConfigError("alphabet sizes must be >= 1");
    if (degrees_[i] < 0) throw ConfigError("degree caps must be >= 0");
  }
  factor_words_.resize(k());
  for (std::size_t i = 0; i < k(); ++i) factor_words_[i] = words_up_to(n_[i], degrees_[i]);
  strides_.assign(k(), 1);
  for (std::size_t i = k(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= factor_words_[i].size();
  }
  basis_.reserve(dim_);
  for (std::size_t idx = 0; idx < dim_; ++idx) {
    std::vector<Word> parts;
    parts.reserve(k());
    for (std::size_t i = 0; i < k(); ++i) parts.push_back(factor_words_[i][(idx / strides_[i]) % factor_words_[i].size()]);
    basis_.emplace_back(std::move(parts));
  }
}

bool FockTruncation::admissible(const MultiWord& w) const {
  if (w.shape() != n_) return false;
  for (std::size_t i = 0; i < k(); ++i)
    if (static_cast<int>(w.part(i).length()) > degrees_[i]) return false;
  return true;
}

std::size_t FockTruncation::find(const MultiWord& w) const {
  if (!admissible(w)) return npos;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k(); ++i) idx += graded_lex_rank(w.part(i)) * strides_[i];
  return idx;
}

std::size_t FockTruncation::index(const MultiWord& w) const {
  const std::size_t idx = find(w);
  if (idx == npos) throw ConfigError("word " + w.str() + " exceeds the truncation");
  return idx;
}

std::vector<std::size_t> FockTruncation::split(std::size_t idx) const {
  std::vector<std::size_t> ranks(k());
  for (std::size_t i = 0; i < k(); ++i) ranks[i] = (idx / strides_[i]) % factor_words_[i].size();
  return ranks;
}

std::size_t FockTruncation::join(const std::vector<std::size_t>& ranks) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k(); ++i) idx += ranks[i] * strides_[i];
  return idx;
}

// Graded-lex ranks make these moves pure arithmetic: for a word of length p
// with in-layer rank q, prepending g_j gives in-layer rank (j-1) n^p + q and
// appending gives q n + (j-1).
namespace {

struct RankInfo {
  std::size_t length;
  std::size_t layer_offset;
  std::size_t in_layer;
  std::size_t layer_size;
};

RankInfo decode(std::size_t rank, std::size_t n) {
  std::size_t offset = 0, layer = 1, p = 0;
  while (rank >= offset + layer) {
    offset += layer;
    layer *= n;
    ++p;
  }
  return {p, offset, rank - offset, layer};
}

}  // namespace

std::size_t FockTruncation::prepend(std::size_t i, int j, std::size_t rank) const {
  const auto n = static_cast<std::size_t>(n_[i]);
  const RankInfo r = decode(rank, n);
  if (static_cast<int>(r.length) + 1 > degrees_[i]) return npos;
  const std::size_t next_offset = r.layer_offset + r.layer_size;
  return next_offset + static_cast<std::size_t>(j - 1) * r.layer_size + r.in_layer;
}

std::size_t FockTruncation::append(std::size_t i, int j, std::size_t rank) const {
  const auto n = static_cast<std::size_t>(n_[i]);
  const RankInfo r = decode(rank, n);
  if (static_cast<int>(r.length) + 1 > degrees_[i]) return npos;
  const std::size_t next_offset = r.layer_offset + r.layer_size;
  return next_offset + r.in_layer * n + static_cast<std::size_t>(j - 1);
}

std::size_t FockTruncation::strip_first(std::size_t i, int j, std::size_t rank) const {
  const auto n = static_cast<std::size_t>(n_[i]);
  const RankInfo r = decode(rank, n);
  if (r.length == 0) return npos;
  const std::size_t sub = r.layer_size / n;
  if (r.in_layer / sub != static_cast<std::size_t>(j - 1)) return npos;
  const std::size_t prev_offset = r.layer_offset - sub;
  return prev_offset + r.in_layer % sub;
}

std::size_t FockTruncation::strip_last(std::size_t i, int j, std::size_t rank) const {
  const auto n = static_cast<std::size_t>(n_[i]);
  const RankInfo r = decode(rank, n);
  if (r.length == 0) return npos;
  if (r.in_layer % n != static_cast<std::size_t>(j - 1)) return npos;
  const std::size_t sub = r.layer_size / n;
  const std::size_t prev_offset = r.layer_offset - sub;
  return prev_offset + r.in_layer / n;
}

TruncationPtr make_truncation(std::vector<int> n, std::vector<int> degrees) {
  return std::make_shared<const FockTruncation>(std::move(n), std::move(degrees));
}

Window::Window(TruncationPtr t, std::vector<int> caps) : t_(std::move(t)), caps_(std::move(caps)) {
  if (caps_.size() != t_->k()) throw ConfigError("window caps length must equal k");
  member_.assign(t_->dim(), 0);
  for (std::size_t idx = 0; idx < t_->dim(); ++idx) {
    if (contains(t_->word(idx))) {
      member_[idx] = 1;
      indices_.push_back(idx);
    }
  }
}

bool Window::contains(const MultiWord& w) const {
  if (!t_->admissible(w)) return false;
  for (std::size_t i = 0; i < caps_.size(); ++i)
    if (static_cast<int>(w.part(i).length()) > caps_[i]) return false;
  return true;
}

Window exact_window(const TruncationPtr& t, const std::vector<int>& raise_budget) {
  if (raise_budget.size() != t->k()) throw ConfigError("raise budget length must equal k");
  std::vector<int> caps(t->k());
  for (std::size_t i = 0; i < t->k(); ++i) {
    if (raise_budget[i] < 0) throw ConfigError("raise budget must be >= 0");
    if (raise_budget[i] > t->degrees()[i]) throw ConfigError("raise budget exceeds degree cap");
    caps[i] = t->degrees()[i] - raise_budget[i];
  }
  return Window(t, std::move(caps));
}

Vec FockVector::flat() const { return amplitudes.reshaped(); }

FockVector FockVector::from_flat(TruncationPtr t, const Vec& v, std::size_t coeff_dim) {
  const auto dim = static_cast<Eigen::Index>(t->dim());
  if (v.size() != dim * static_cast<Eigen::Index>(coeff_dim)) throw ConfigError("flat vector size mismatch");
  FockVector out{std::move(t), Mat(v.reshaped(dim, static_cast<Eigen::Index>(coeff_dim)))};
  return out;
}

FockVector FockVector::basis_vector(TruncationPtr t, const MultiWord& w, std::size_t coeff_dim,
                                    std::size_t c) {
  if (c >= coeff_dim) throw ConfigError("coefficient index out of range");
  const std::size_t idx = t->index(w);
  Mat amp = Mat::Zero(static_cast<Eigen::Index>(t->dim()), static_cast<Eigen::Index>(coeff_dim));
  amp(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(c)) = 1.0;
  return FockVector{std::move(t), std::move(amp)};
}

FockVector FockOperator::apply(const FockVector& v) const {
  if (!(*v.truncation == *truncation) || v.coeff_dim() != coeff_dim)
    throw ConfigError("operator/vector shape mismatch");
  return FockVector::from_flat(truncation, matrix * v.flat(), coeff_dim);
}

namespace {

void check_generator(const FockTruncation& t, int i, int j) {
  if (i < 1 || i > static_cast<int>(t.k())) throw ConfigError("factor index out of range");
  if (j < 1 || j > t.n()[static_cast<std::size_t>(i - 1)]) throw ConfigError("generator index out of range");
}

// Image of basis index idx under the creation (or annihilation), or npos.
std::size_t move_index(const FockTruncation& t, Side side, int i, int j, bool adjoint,
                       std::size_t idx) {
  auto ranks = t.split(idx);
  const auto fi = static_cast<std::size_t>(i - 1);
  std::size_t r;
  if (side == Side::left)
    r = adjoint ? t.strip_first(fi, j, ranks[fi]) : t.prepend(fi, j, ranks[fi]);
  else
    r = adjoint ? t.strip_last(fi, j, ranks[fi]) : t.append(fi, j, ranks[fi]);
  if (r == FockTruncation::npos) return FockTruncation::npos;
  ranks[fi] = r;
  return t.join(ranks);
}

}  // namespace

FockVector apply_creation(const FockTruncation& t, Side side, int i, int j, bool adjoint,
                          const FockVector& v) {
  check_generator(t, i, j);
  if (!(*v.truncation == t)) throw ConfigError("vector belongs to a different truncation");
  FockVector out{v.truncation, Mat::Zero(v.amplitudes.rows(), v.amplitudes.cols())};
  for (std::size_t idx = 0; idx < t.dim(); ++idx) {
    const std::size_t to = move_index(t, side, i, j, adjoint, idx);
    if (to != FockTruncation::npos)
      out.amplitudes.row(static_cast<Eigen::Index>(to)) = v.amplitudes.row(static_cast<Eigen::Index>(idx));
  }
  return out;
}

SpMat creation_matrix(const FockTruncation& t, Side side, int i, int j, bool adjoint) {
  check_generator(t, i, j);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(t.dim());
  for (std::size_t idx = 0; idx < t.dim(); ++idx) {
    const std::size_t to = move_index(t, side, i, j, adjoint, idx);
    if (to != FockTruncation::npos)
      trips.emplace_back(static_cast<int>(to), static_cast<int>(idx), 1.0);
  }
  const auto d = static_cast<Eigen::Index>(t.dim());
  SpMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SpMat word_matrix(const FockTruncation& t, Side side, const MultiWord& a, const MultiWord& b) {
  if (a.shape() != t.n() || b.shape() != t.n()) throw ConfigError("word shape does not match truncation");
  if (!t.admissible(a) || !t.admissible(b)) throw ConfigError("word exceeds the truncation");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::size_t idx = 0; idx < t.dim(); ++idx) {
    auto ranks = t.split(idx);
    bool alive = true;
    for (std::size_t i = 0; i < t.k() && alive; ++i) {
      std::size_t r = ranks[i];
      const auto& bl = b.part(i).letters();
      const auto& al = a.part(i).letters();
      if (side == Side::left) {
        for (std::size_t p = 0; p < bl.size() && r != FockTruncation::npos; ++p)
          r = t.strip_first(i, bl[p], r);
        for (std::size_t p = al.size(); p-- > 0 && r != FockTruncation::npos;)
          r = t.prepend(i, al[p], r);
      } else {
        for (std::size_t p = bl.size(); p-- > 0 && r != FockTruncation::npos;)
          r = t.strip_last(i, bl[p], r);
        for (std::size_t p = 0; p < al.size() && r != FockTruncation::npos; ++p)
          r = t.append(i, al[p], r);
      }
      if (r == FockTruncation::npos) alive = false;
      ranks[i] = r;
    }
    if (alive) trips.emplace_back(static_cast<int>(t.join(ranks)), static_cast<int>(idx), 1.0);
  }
  const auto d = static_cast<Eigen::Index>(t.dim());
  SpMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

void kron_triplets(const Mat& c, const SpMat& w, std::vector<Eigen::Triplet<cplx>>& out) {
  const Eigen::Index n = w.rows();
  const Eigen::Index m = w.cols();
  for (Eigen::Index col = 0; col < w.outerSize(); ++col) {
    for (SpMat::InnerIterator it(w, col); it; ++it) {
      for (Eigen::Index a = 0; a < c.rows(); ++a)
        for (Eigen::Index b = 0; b < c.cols(); ++b)
          if (c(a, b) != cplx(0.0))
            out.emplace_back(static_cast<int>(a * n + it.row()), static_cast<int>(b * m + col),
                             c(a, b) * it.value());
    }
  }
}

SpMat coefficient_kron(const Mat& c, const SpMat& w) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(w.nonZeros() * c.size()));
  kron_triplets(c, w, trips);
  SpMat out(c.rows() * w.rows(), c.cols() * w.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat lift(const SpMat& w, std::size_t e) {
  return coefficient_kron(Mat::Identity(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)), w);
}

FockOperator word_operator(const TruncationPtr& t, const MultiWord& a, const MultiWord& b,
                           const Mat& coefficient, Side side) {
  if (coefficient.rows() != coefficient.cols()) throw ConfigError("coefficient must be square");
  FockOperator op;
  op.truncation = t;
  op.coeff_dim = static_cast<std::size_t>(coefficient.rows());
  op.matrix = coefficient_kron(coefficient, word_matrix(*t, side, a, b));
  return op;
}

FockOperator identity_operator(const TruncationPtr& t, std::size_t coeff_dim) {
  FockOperator op;
  op.truncation = t;
  op.coeff_dim = coeff_dim;
  const auto d = static_cast<Eigen::Index>(t->dim() * coeff_dim);
  op.matrix = SpMat(d, d);
  op.matrix.setIdentity();
  op.self_adjoint = true;
  op.positive = true;
  return op;
}

}  // namespace polyball
