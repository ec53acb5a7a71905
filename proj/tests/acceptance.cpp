// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "polyball/berezin.hpp"
#include "polyball/naimark.hpp"
#include "polyball/pluriharm.hpp"
#include "polyball/toeplitz.hpp"

using namespace polyball;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<std::vector<int>> kShapes{{1}, {2}, {1, 1}, {2, 1}, {2, 2}};

// Word-box degrees with a few thousand basis vectors at most.
std::vector<int> moment_degrees(const std::vector<int>& n) {
  if (n == std::vector<int>{1}) return {24};
  if (n == std::vector<int>{2}) return {9};
  if (n == std::vector<int>{1, 1}) return {24, 24};
  if (n == std::vector<int>{2, 1}) return {6, 12};
  return {4, 4};
}

std::vector<MultiWord> all_words(const std::vector<int>& n, int max_total) {
  return multiwords_in_box(n, std::vector<int>(n.size(), max_total), max_total);
}

Outcome berezin_moments() {
  gen::Rng rng(101);
  double worst_excess = -1.0, worst_err = 0.0;
  std::size_t checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& n = kShapes[static_cast<std::size_t>(trial) % kShapes.size()];
    const auto x = gen::point(rng, n, 2, 0.6);
    const auto t = make_truncation(n, moment_degrees(n));
    const auto ker = berezin_kernel(x, t);
    const auto words = all_words(n, 3);
    for (const auto& a : words)
      for (const auto& b : words) {
        if (a.total_length() + b.total_length() > 3) continue;
        const Mat got = berezin_transform(word_operator(t, a, b, Mat::Identity(1, 1)), ker);
        const Mat expect = oracle::monomial(x, oracle::to_multi(a)) * oracle::monomial(x, oracle::to_multi(b)).adjoint();
        const double err = oracle::norm(got - expect);
        const double allowed = std::max(1e-9, moment_tail_bound(x, *t, a, b));
        worst_excess = std::max(worst_excess, err - allowed);
        worst_err = std::max(worst_err, err);
        ++checks;
      }
  }
  return {worst_excess <= 0.0, std::to_string(checks) + " monomials over 50 points, max error " +
                                   fmt("%.2e", worst_err) + ", max excess over bound " + fmt("%.2e", worst_excess)};
}

Outcome kernel_isometry() {
  gen::Rng rng(102);
  double iso = 0.0, inter = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto& n = kShapes[static_cast<std::size_t>(trial) % kShapes.size()];
    const auto x = gen::point(rng, n, 2, 0.95, true);
    const auto t = make_truncation(n, std::vector<int>(n.size(), 3));
    const Mat k = berezin_kernel(x, t).matrix();
    const auto h = static_cast<Eigen::Index>(x.h_dim());
    iso = std::max(iso, oracle::norm(k.adjoint() * k - Mat::Identity(h, h)));
    for (std::size_t i = 0; i < n.size(); ++i)
      for (int j = 1; j <= n[i]; ++j) {
        const Mat s_adj = Mat(creation_matrix(*t, Side::left, static_cast<int>(i + 1), j, true));
        const Mat rhs = oracle::kron(Mat::Identity(h, h), s_adj) * k;
        inter = std::max(inter, oracle::norm(k * x(static_cast<int>(i + 1), j).adjoint() - rhs));
      }
  }
  return {iso <= 1e-10 && inter <= 1e-10,
          "20 nilpotent points, isometry defect " + fmt("%.2e", iso) + ", intertwining defect " + fmt("%.2e", inter)};
}

Outcome poisson_factorization() {
  gen::Rng rng(103);
  struct Box {
    std::vector<int> n, small, big;
  };
  const std::vector<Box> boxes{{{1}, {4}, {24}}, {{2}, {2}, {8}}, {{1, 1}, {3, 3}, {14, 14}},
                               {{2, 1}, {2, 2}, {7, 7}}, {{2, 2}, {1, 1}, {5, 5}}};
  double worst_excess = -1.0, worst_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto& box = boxes[static_cast<std::size_t>(trial) % boxes.size()];
    const auto ts = make_truncation(box.n, box.small);
    const auto tb = make_truncation(box.n, box.big);
    const auto x = gen::point(rng, box.n, 2, 0.5);
    const Mat p = poisson_kernel(x, ts).op.dense();
    const auto h = static_cast<Eigen::Index>(x.h_dim());
    const auto ds = static_cast<Eigen::Index>(ts->dim());
    const auto db = static_cast<Eigen::Index>(tb->dim());
    Mat embed = Mat::Zero(h * db, h * ds);
    for (Eigen::Index a = 0; a < h; ++a)
      for (Eigen::Index r = 0; r < ds; ++r)
        embed(a * db + static_cast<Eigen::Index>(tb->index(ts->word(static_cast<std::size_t>(r)))), a * ds + r) = 1.0;
    const Mat c = cauchy_apply(creation_tuple(*tb, Side::right), x, embed);
    const double tail = cauchy_tail_bound(x, box.small, box.big);
    const double err = oracle::norm(p - c.adjoint() * c);
    worst_err = std::max(worst_err, err);
    worst_excess = std::max(worst_excess, err - (tail * tail + 1e-12));
  }
  return {worst_excess <= 0.0, "20 points, max error " + fmt("%.2e", worst_err) + ", max excess over bound " +
                                   fmt("%.2e", worst_excess)};
}

Outcome classical_recovery() {
  SeriesOptions opt;
  opt.degrees = {24, 24};
  const double phi1 = 0.3, phi2 = -1.1;
  const auto mu = CbMapData::point_mass({{std::polar(1.0, phi1)}, {std::polar(1.0, phi2)}});
  double worst = 0.0;
  for (double r : {0.1, 0.2, 0.3, 0.4, 0.5})
    for (double th : {-2.5, -1.0, 0.0, 1.2, 3.0}) {
      const auto z = PolyballPoint::scalars({{std::polar(r, th)}, {std::polar(r, 0.5 * th + 0.7)}});
      const double expect = oracle::disc_poisson(r, th - phi1) * oracle::disc_poisson(r, 0.5 * th + 0.7 - phi2);
      worst = std::max(worst, std::abs(poisson_transform(mu, z, opt).value(0, 0) - expect));
    }
  const double nine =
      poisson_transform(CbMapData::point_mass({{1.0}, {1.0}}), PolyballPoint::scalars({{0.5}, {0.5}}), opt).value(0, 0)
          .real();
  // Second route: Fourier coefficients of the truncated Poisson kernel P(R, z).
  const auto p = poisson_kernel(PolyballPoint::scalars({{0.5}, {0.5}}), make_truncation({1, 1}, {24, 24}));
  const auto sym = extract_symbol(p.op, 48);
  cplx sum = 0.0;
  for (const auto& [key, m] : sym.coeffs()) sum += m(0, 0);
  const double err9 = std::max(std::abs(nine - 9.0), std::abs(sum - 9.0));
  return {worst <= 1e-6 && err9 <= 1e-6, "25 grid points at degree 24, max error " + fmt("%.2e", worst) +
                                             ", P(0.5,0.5) = " + fmt("%.9f", nine) + " (kernel route " +
                                             fmt("%.9f", sum.real()) + ")"};
}

Outcome fourier_roundtrip() {
  gen::Rng rng(105);
  double coeff_err = 0.0, action_err = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& n = kShapes[static_cast<std::size_t>(trial) % kShapes.size()];
    const std::size_t e = trial % 2 == 0 ? 1 : 2;
    const std::vector<int> caps(n.size(), 2);
    const auto t = make_truncation(n, std::vector<int>(n.size(), 3));
    const auto sym = gen::symbol(rng, n, e, 6, caps);
    const auto op = symbol_operator(sym, t);
    const auto back = extract_symbol(op, 2 * static_cast<int>(n.size()) * 2);
    for (const auto& [key, m] : sym.coeffs()) coeff_err = std::max(coeff_err, oracle::max_abs(back.at(key.first, key.second) - m));
    for (const auto& [key, m] : back.coeffs()) coeff_err = std::max(coeff_err, oracle::max_abs(sym.at(key.first, key.second) - m));

    const Mat phi = evaluate_symbol(back, PolyballPoint::shifts(*t, 1.0));
    const Window w = exact_window(t, caps);
    const auto dim = static_cast<Eigen::Index>(t->dim());
    Vec q = Vec::Zero(static_cast<Eigen::Index>(op.size()));
    for (std::size_t idx : w.indices())
      for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(e); ++c)
        q(c * dim + static_cast<Eigen::Index>(idx)) = gen::matrix(rng, 1, 1)(0, 0);
    action_err = std::max(action_err, (op.matrix * q - phi * q).norm() / q.norm());
  }
  return {coeff_err <= 1e-11 && action_err <= 1e-11,
          "30 symbols, coefficient error " + fmt("%.2e", coeff_err) + ", window action error " + fmt("%.2e", action_err)};
}

Outcome toeplitz_characterization() {
  gen::Rng rng(106);
  double worst_pos = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& n = kShapes[static_cast<std::size_t>(trial) % 4];  // (2,2) boxes make the dense products slow
    const std::vector<int> d(n.size(), n.size() == 1 ? 3 : 2);
    oracle::Basis b(n, d);
    const std::size_t e = trial % 2 == 0 ? 1 : 2;
    const Mat m = fixture::positive_combination(rng, b, 2, e);
    worst_pos = std::max(worst_pos, is_k_multi_toeplitz(fixture::from_dense(make_truncation(n, d), e, m)).max_violation);
  }

  std::vector<std::pair<TruncationPtr, Mat>> bad;
  {
    const std::vector<int> n{2};
    const auto t = make_truncation(n, {3});
    const MultiWord g1 = oracle::to_word({{1}}, n), g2 = oracle::to_word({{2}}, n), g = MultiWord::identity(n);
    bad.emplace_back(t, Mat(word_matrix(*t, Side::left, g1, g2)) + Mat(word_matrix(*t, Side::left, g2, g1)));
    bad.emplace_back(t, Mat(word_matrix(*t, Side::left, g1, g1)));
    bad.emplace_back(t, Mat(creation_matrix(*t, Side::right, 1, 1)));
    Mat vac = Mat::Zero(static_cast<Eigen::Index>(t->dim()), static_cast<Eigen::Index>(t->dim()));
    vac(0, 0) = 1.0;
    bad.emplace_back(t, vac);
    Mat number = Mat::Zero(vac.rows(), vac.cols());
    for (std::size_t p = 0; p < t->dim(); ++p)
      number(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = double(t->word(p).total_length());
    bad.emplace_back(t, number);
    bad.emplace_back(t, Mat(word_matrix(*t, Side::left, g1, g)) + 0.05 * vac);
  }
  for (const auto& n : {std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
    const auto t = make_truncation(n, {2, 2});
    const auto dim = static_cast<Eigen::Index>(t->dim());
    bad.emplace_back(t, gen::matrix(rng, dim, dim));
    Mat m = Mat(word_matrix(*t, Side::left, oracle::to_word({{1}, {}}, n), oracle::to_word({{}, {1}}, n)));
    m(0, 0) += 0.1;
    bad.emplace_back(t, m);
  }
  double worst_bad = std::numeric_limits<double>::infinity();
  for (const auto& [t, m] : bad)
    worst_bad = std::min(worst_bad, is_k_multi_toeplitz(fixture::from_dense(t, 1, m)).max_violation);
  return {worst_pos <= 1e-11 && worst_bad >= 1e-2 && bad.size() == 10,
          "30 sums of p(S)^*q(S), max violation " + fmt("%.2e", worst_pos) + "; " + std::to_string(bad.size()) +
              " non-Toeplitz operators, min violation " + fmt("%.2e", worst_bad)};
}

Mat word_images(const NaimarkDilation& d, const std::vector<MultiWord>& ws) {
  Mat out(static_cast<Eigen::Index>(d.space_dim), static_cast<Eigen::Index>(ws.size() * d.e_dim));
  for (std::size_t p = 0; p < ws.size(); ++p) {
    const Mat v = d.apply_word(ws[p], d.embedding);
    for (std::size_t c = 0; c < d.e_dim; ++c)
      out.col(static_cast<Eigen::Index>(c * ws.size() + p)) = v.col(static_cast<Eigen::Index>(c));
  }
  return out;
}

Outcome naimark() {
  gen::Rng rng(107);
  const std::vector<std::vector<int>> shapes{{2}, {1, 1}, {2, 1}, {2, 2}};
  double repro = 0.0, iso = 0.0, comm = 0.0, dual = 0.0;
  int refused = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& n = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    const std::size_t e = trial % 3 == 0 ? 2 : 1;
    const auto g = fixture::psd_generator(rng, n, e, 6);
    const auto k = kernel_from_generator(Side::left, n, e, g, 3);
    const auto d = naimark_dilate(k);
    const auto rep = dilation_verify(d, k);
    repro = std::max(repro, rep.reproduction_error);
    for (double v : rep.isometry_defect) iso = std::max(iso, v);
    comm = std::max(comm, rep.commutator_norm);
    if (trial < 10) {
      try {
        naimark_dilate(ToeplitzKernel(Side::left, n, e, 3, fixture::break_psd(rng, g, n, e, 3)));
      } catch (const PsdError&) {
        ++refused;
      }
      // Right kernel whose reversal is this left kernel.
      CoeffMap rg;
      for (const auto& [key, m] : g) rg[{key.first.reversed(), key.second.reversed()}] = m;
      const auto right = kernel_from_generator(Side::right, n, e, rg, 3);
      const auto dr = naimark_dilate(right);
      for (const auto& s : right.words())
        for (const auto& w : right.words()) {
          const Mat via = dr.apply_word(s, dr.embedding).adjoint() * dr.apply_word(w, dr.embedding);
          dual = std::max(dual, oracle::max_abs(via - right.value(s.reversed(), w.reversed())));
        }
      const auto ws = k.words();
      const Mat a = word_images(dr, ws), b = word_images(d, ws);
      dual = std::max(dual, oracle::max_abs(a.adjoint() * a - b.adjoint() * b));
    }
  }
  return {repro <= 1e-8 && iso <= 1e-9 && comm <= 1e-9 && refused == 10 && dual <= 1e-9,
          "30 kernels: reproduction " + fmt("%.2e", repro) + ", isometry " + fmt("%.2e", iso) + ", commutation " +
              fmt("%.2e", comm) + "; refused " + std::to_string(refused) + "/10 non-PSD; right duality " +
              fmt("%.2e", dual)};
}

Outcome schur() {
  gen::Rng rng(108);
  int agree = 0, total = 0, positive = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& n = kShapes[static_cast<std::size_t>(trial) % 4];
    const auto f = gen::hermitian_symbol(rng, n, 3, gen::uniform(rng, 0.05, 0.6));
    const std::vector<int> d(n.size(), n.size() == 1 ? 3 : 2);
    const auto rep = schur_positivity(f, {0.3, 0.6, 0.9}, make_truncation(n, d), 1e-8);
    for (const auto& pt : rep.points) {
      ++total;
      if (pt.operator_positive == pt.kernel_positive) ++agree;
      if (pt.operator_positive) ++positive;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree (" +
                              std::to_string(positive) + " positive)"};
}

Outcome herglotz() {
  SeriesOptions opt;
  opt.tol = 1e-9;
  const auto pm = CbMapData::point_mass({{1.0}});
  double classical = 0.0;
  for (double r : {0.0, 0.3, 0.6, 0.8, 0.9})
    for (int s = 0; s < 8; ++s) {
      const cplx z = std::polar(r, 2.0 * std::numbers::pi * s / 8.0);
      classical = std::max(classical,
                           std::abs(herglotz_transform(pm, PolyballPoint::scalars({{z}}), opt).value(0, 0) - (1.0 + z) / (1.0 - z)));
    }
  gen::Rng rng(109);
  const fixture::KScaling ks(rng);
  const double k = fixture::KScaling::k;
  double scaling = 0.0;
  for (double r1 : {0.0, 0.15, 0.3, 0.45})
    for (double r2 : {0.1, 0.25, 0.49})
      for (double th : {0.0, 1.5, -2.2}) {
        const cplx y1 = std::polar(r1, th), y2 = std::polar(r2, 1.0 - th);
        const auto h = herglotz_transform(ks.mu, PolyballPoint::scalars({{k * y1}, {k * y2}}));
        scaling = std::max(scaling, std::abs(ks.f(y1, y2) - (h.value(0, 0) + cplx(0.0, ks.imag0))));
      }
  return {classical <= 1e-7 && scaling <= 1e-7,
          "disc kernel error " + fmt("%.2e", classical) + ", k-scaling error " + fmt("%.2e", scaling)};
}

Outcome spectral() {
  gen::Rng rng(110);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<cplx>> z;
    double prod = 1.0;
    const std::size_t k = trial % 2 == 0 ? 1 : 2;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<cplx> row;
      double norm2 = 0.0;
      for (int j = 0; j < 2; ++j) row.push_back(gen::matrix(rng, 1, 1)(0, 0));
      for (cplx c : row) norm2 += std::norm(c);
      const double target = gen::uniform(rng, 0.1, 0.9);
      for (cplx& c : row) c *= target / std::sqrt(norm2);
      prod *= target;
      z.push_back(row);
    }
    const double expect = std::pow(prod, 1.0 / static_cast<double>(k));
    worst = std::max(worst, std::abs(spectral_radius(PolyballPoint::scalars(z), 12).value - expect));
  }
  for (double r : {0.2, 0.5, 0.8}) {
    worst = std::max(worst, std::abs(spectral_radius(PolyballPoint::shifts(*make_truncation({1}, {12}), r), 12).value - r));
    worst = std::max(worst, std::abs(spectral_radius(PolyballPoint::shifts(*make_truncation({1, 1}, {12, 12}), r), 12).value - r));
  }
  return {worst <= 1e-6, "16 closed-form cases, max error " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Berezin moment identity", berezin_moments},
      {"kernel isometry and intertwining", kernel_isometry},
      {"Poisson factorization", poisson_factorization},
      {"classical recovery", classical_recovery},
      {"Fourier roundtrip", fourier_roundtrip},
      {"Toeplitz characterization", toeplitz_characterization},
      {"Naimark dilation", naimark},
      {"Schur positivity equivalence", schur},
      {"Herglotz representation", herglotz},
      {"spectral radius", spectral},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[c].second();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c + 1, criteria[c].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
