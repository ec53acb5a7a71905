#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "polyball/types.hpp"
#include "polyball/words.hpp"

using namespace polyball;

namespace {

MultiWord mw(const std::vector<int>& n, const oracle::Multi& parts) { return oracle::to_word(parts, n); }

// Comparability read straight off the definition: per factor one word is a
// tail (right) or head (left) of the other; the quotient is what remains.
struct OracleCompare {
  bool comparable = true;
  oracle::Multi plus, minus;
};

OracleCompare oracle_compare(bool right, const oracle::Multi& w, const oracle::Multi& v) {
  OracleCompare out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& a = w[i];
    const auto& b = v[i];
    auto quotient = [&](const oracle::Letters& big, const oracle::Letters& small) {
      return right ? oracle::Letters(big.begin(), big.end() - static_cast<long>(small.size()))
                   : oracle::Letters(big.begin() + static_cast<long>(small.size()), big.end());
    };
    const bool b_in_a = right ? oracle::is_suffix(b, a) : oracle::is_prefix(b, a);
    const bool a_in_b = right ? oracle::is_suffix(a, b) : oracle::is_prefix(a, b);
    if (b_in_a) {
      out.plus.push_back(quotient(a, b));
      out.minus.push_back({});
    } else if (a_in_b) {
      out.plus.push_back({});
      out.minus.push_back(quotient(b, a));
    } else {
      out.comparable = false;
      return out;
    }
  }
  return out;
}

std::vector<oracle::Multi> all_multis(const std::vector<int>& n, int max_total) {
  oracle::Basis b(n, std::vector<int>(n.size(), max_total));
  std::vector<oracle::Multi> out;
  for (const auto& w : b.words) {
    std::size_t total = 0;
    for (const auto& p : w) total += p.size();
    if (static_cast<int>(total) <= max_total) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("reverse examples") {
  CHECK(reverse(mw({3}, {{1, 2, 3}})) == mw({3}, {{3, 2, 1}}));
  CHECK(reverse(MultiWord::identity({2, 2})) == MultiWord::identity({2, 2}));
  CHECK(reverse(mw({2, 2}, {{1, 2}, {2}})) == mw({2, 2}, {{2, 1}, {2}}));
}

TEST_CASE("compare examples") {
  const std::vector<int> n{2, 1};
  auto r = compare(Side::right, mw(n, {{1, 2}, {}}), mw(n, {{2}, {}}));
  CHECK(r.comparable);
  CHECK(r.c_plus == mw(n, {{1}, {}}));
  CHECK(r.c_minus == MultiWord::identity(n));

  CHECK_FALSE(compare(Side::right, mw(n, {{1}, {}}), mw(n, {{2}, {}})).comparable);

  auto l = compare(Side::left, mw(n, {{1, 2}, {}}), mw(n, {{1}, {}}));
  CHECK(l.comparable);
  CHECK(l.c_plus == mw(n, {{2}, {}}));
  CHECK(l.c_minus == MultiWord::identity(n));
}

TEST_CASE("lambda membership examples") {
  const std::vector<int> n{2, 2};
  CHECK(lambda_membership(mw(n, {{1}, {}}), mw(n, {{}, {2}})));
  CHECK_FALSE(lambda_membership(mw(n, {{1}, {}}), mw(n, {{1}, {}})));
  CHECK(lambda_membership(MultiWord::identity(n), MultiWord::identity(n)));
}

TEST_CASE("shape mismatch is a config error") {
  CHECK_THROWS_AS(compare(Side::left, MultiWord::identity({2}), MultiWord::identity({2, 1})), ConfigError);
  CHECK_THROWS_AS(compare(Side::left, MultiWord::identity({2}), MultiWord::identity({1})), ConfigError);
  CHECK_THROWS_AS(lambda_membership(MultiWord::identity({2}), MultiWord::identity({2, 2})), ConfigError);
  CHECK_THROWS_AS(Word(2, {3}), ConfigError);
  CHECK_THROWS_AS(Word(2, {0}), ConfigError);
}

TEST_CASE("exhaustive comparability against the definition") {
  for (const std::vector<int>& n : {std::vector<int>{1}, {2}, {1, 1}, {2, 1}, {2, 2}}) {
    const auto words = all_multis(n, 4);
    for (const auto& w : words)
      for (const auto& v : words) {
        const MultiWord a = mw(n, w), b = mw(n, v);
        for (bool right : {true, false}) {
          const auto ref = oracle_compare(right, w, v);
          const auto got = compare(right ? Side::right : Side::left, a, b);
          REQUIRE(got.comparable == ref.comparable);
          if (!ref.comparable) continue;
          CHECK(oracle::to_multi(got.c_plus) == ref.plus);
          CHECK(oracle::to_multi(got.c_minus) == ref.minus);
          for (std::size_t i = 0; i < n.size(); ++i)
            CHECK((got.c_plus.part(i).empty() || got.c_minus.part(i).empty()));
        }
        bool lam = true;
        for (std::size_t i = 0; i < n.size(); ++i) lam = lam && (w[i].empty() || v[i].empty());
        CHECK(lambda_membership(a, b) == lam);
      }
  }
}

TEST_CASE("reversal intertwines right and left comparability") {
  const std::vector<int> n{2, 2};
  const auto words = all_multis(n, 4);
  for (const auto& w : words)
    for (const auto& v : words) {
      const MultiWord a = mw(n, w), b = mw(n, v);
      const auto r = compare(Side::right, a, b);
      const auto l = compare(Side::left, reverse(a), reverse(b));
      REQUIRE(r.comparable == l.comparable);
      CHECK(lambda_membership(a, b) == lambda_membership(reverse(a), reverse(b)));
      CHECK(reverse(reverse(a)) == a);
      if (!r.comparable) continue;
      CHECK(reverse(r.c_plus) == l.c_plus);
      CHECK(reverse(r.c_minus) == l.c_minus);
      // Reconstruction: w_i = c+_i v_i or v_i = c-_i w_i.
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (r.c_minus.part(i).empty())
          CHECK(r.c_plus.part(i) * b.part(i) == a.part(i));
        else
          CHECK(r.c_minus.part(i) * a.part(i) == b.part(i));
      }
    }
}

TEST_CASE("lambda pairs are left comparable with themselves as quotients") {
  const std::vector<int> n{2, 1};
  for (const auto& [a, b] : lambda_pairs(n, 4)) {
    const auto l = compare(Side::left, a, b);
    REQUIRE(l.comparable);
    CHECK(l.c_plus == a);
    CHECK(l.c_minus == b);
  }
}

TEST_CASE("graded-lex enumeration, counts and ranks") {
  for (int n = 1; n <= 3; ++n)
    for (int d = 0; d <= 4; ++d) {
      const auto words = words_up_to(n, d);
      const auto ref = oracle::words(n, d);
      REQUIRE(words.size() == ref.size());
      CHECK(count_words_up_to(n, d) == ref.size());
      for (std::size_t p = 0; p < words.size(); ++p) {
        CHECK(words[p].letters() == ref[p]);
        CHECK(graded_lex_rank(words[p]) == p);
        if (p) CHECK(words[p - 1] < words[p]);
      }
    }
}

TEST_CASE("box enumeration is row-major and respects caps") {
  const std::vector<int> n{2, 1};
  const auto box = multiwords_in_box(n, {2, 3}, 3);
  oracle::Basis b(n, {2, 3});
  std::vector<oracle::Multi> ref;
  for (const auto& w : b.words)
    if (w[0].size() + w[1].size() <= 3) ref.push_back(w);
  REQUIRE(box.size() == ref.size());
  for (std::size_t p = 0; p < box.size(); ++p) CHECK(oracle::to_multi(box[p]) == ref[p]);
  CHECK(box.front().is_identity());
}

TEST_CASE("lambda pair enumeration is complete and duplicate free") {
  const std::vector<int> n{2, 2};
  const auto pairs = lambda_pairs(n, 3);
  std::set<LambdaPair> seen(pairs.begin(), pairs.end());
  CHECK(seen.size() == pairs.size());
  std::size_t expected = 0;
  const auto words = all_multis(n, 3);
  for (const auto& w : words)
    for (const auto& v : words) {
      std::size_t total = 0;
      bool lam = true;
      for (std::size_t i = 0; i < n.size(); ++i) {
        total += w[i].size() + v[i].size();
        lam = lam && (w[i].empty() || v[i].empty());
      }
      if (lam && total <= 3) {
        ++expected;
        CHECK(seen.count({mw(n, w), mw(n, v)}) == 1);
      }
    }
  CHECK(pairs.size() == expected);
}
