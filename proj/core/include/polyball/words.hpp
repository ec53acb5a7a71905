#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace polyball {

// Element of the free monoid on generators g_1..g_n. Letters are 1-based;
// the empty word is the identity g_0.
class Word {
 public:
  Word() = default;
  explicit Word(int alphabet, std::vector<int> letters = {});

  static Word generator(int alphabet, int j) { return Word(alphabet, {j}); }

  int alphabet() const { return alphabet_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  int operator[](std::size_t p) const { return letters_[p]; }

  Word reversed() const;
  // Concatenation: (*this) followed by rhs.
  Word operator*(const Word& rhs) const;

  bool has_prefix(const Word& p) const;
  bool has_suffix(const Word& s) const;
  // Remove a known prefix / suffix; throws ConfigError if absent.
  Word drop_prefix(const Word& p) const;
  Word drop_suffix(const Word& s) const;

  std::string str() const;

  // Graded-lex: shorter first, then lexicographic.
  std::strong_ordering operator<=>(const Word& rhs) const;
  bool operator==(const Word& rhs) const = default;

 private:
  int alphabet_ = 1;
  std::vector<int> letters_;
};

// Element of F+_{n_1} x ... x F+_{n_k}.
class MultiWord {
 public:
  MultiWord() = default;
  explicit MultiWord(std::vector<Word> parts);

  static MultiWord identity(const std::vector<int>& n);
  // Word w placed in factor i (1-based), identity elsewhere.
  static MultiWord in_factor(const std::vector<int>& n, int i, const Word& w);

  std::size_t k() const { return parts_.size(); }
  const std::vector<Word>& parts() const { return parts_; }
  const Word& part(std::size_t i) const { return parts_[i]; }
  Word& part(std::size_t i) { return parts_[i]; }
  std::vector<int> shape() const;
  std::size_t total_length() const;
  bool is_identity() const;

  MultiWord reversed() const;
  MultiWord operator*(const MultiWord& rhs) const;

  std::string str() const;

  std::strong_ordering operator<=>(const MultiWord& rhs) const;
  bool operator==(const MultiWord& rhs) const = default;

 private:
  std::vector<Word> parts_;
};

using LambdaPair = std::pair<MultiWord, MultiWord>;

enum class Side { left, right };

struct ComparabilityResult {
  bool comparable = false;
  MultiWord c_plus;
  MultiWord c_minus;
};

MultiWord reverse(const MultiWord& w);

// Right: w ~ v when in each factor one word is a right tail of the other,
// c_plus collecting the head of w over v and c_minus the head of v over w.
// Left: same with prefixes, quotients are the remaining suffixes.
ComparabilityResult compare(Side side, const MultiWord& w, const MultiWord& v);

// True iff in every factor a_i or b_i is the identity.
bool lambda_membership(const MultiWord& a, const MultiWord& b);

void check_same_shape(const MultiWord& a, const MultiWord& b);

// All words over n letters with length <= max_len, graded-lex order.
std::vector<Word> words_up_to(int n, int max_len);
// Graded-lex rank of w among all words over its alphabet.
std::size_t graded_lex_rank(const Word& w);
// Number of words of length <= d over n letters.
std::size_t count_words_up_to(int n, int d);

// Multiwords with |w_i| <= caps[i] and total length <= max_total, in
// row-major order over the per-factor graded-lex enumerations.
std::vector<MultiWord> multiwords_in_box(const std::vector<int>& n,
                                         const std::vector<int>& caps,
                                         int max_total);

// Lambda pairs with sum_i (|a_i|+|b_i|) <= max_total and, per factor,
// max(|a_i|,|b_i|) <= caps[i]. Empty caps means no per-factor cap.
std::vector<LambdaPair> lambda_pairs(const std::vector<int>& n, int max_total,
                                     const std::vector<int>& caps = {});

}  // namespace polyball
