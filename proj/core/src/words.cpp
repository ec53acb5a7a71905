#include "polyball/words.hpp"

#include <algorithm>
#include <sstream>

#include "polyball/types.hpp"

namespace polyball {

Word::Word(int alphabet, std::vector<int> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  if (alphabet_ < 1) throw ConfigError("word alphabet size must be >= 1");
  for (int j : letters_) {
    if (j < 1 || j > alphabet_)
      throw ConfigError("generator index " + std::to_string(j) +
                        " outside [1," + std::to_string(alphabet_) + "]");
  }
}

Word Word::reversed() const {
  Word out = *this;
  std::reverse(out.letters_.begin(), out.letters_.end());
  return out;
}

Word Word::operator*(const Word& rhs) const {
  if (rhs.alphabet_ != alphabet_) throw ConfigError("alphabet mismatch in concatenation");
  Word out = *this;
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return out;
}

bool Word::has_prefix(const Word& p) const {
  return p.length() <= length() &&
         std::equal(p.letters_.begin(), p.letters_.end(), letters_.begin());
}

bool Word::has_suffix(const Word& s) const {
  return s.length() <= length() &&
         std::equal(s.letters_.rbegin(), s.letters_.rend(), letters_.rbegin());
}

Word Word::drop_prefix(const Word& p) const {
  if (!has_prefix(p)) throw ConfigError(p.str() + " is not a prefix of " + str());
  return Word(alphabet_, std::vector<int>(letters_.begin() + p.length(), letters_.end()));
}

Word Word::drop_suffix(const Word& s) const {
  if (!has_suffix(s)) throw ConfigError(s.str() + " is not a suffix of " + str());
  return Word(alphabet_, std::vector<int>(letters_.begin(), letters_.end() - s.length()));
}

std::string Word::str() const {
  if (letters_.empty()) return "g0";
  std::ostringstream os;
  for (std::size_t p = 0; p < letters_.size(); ++p) {
    if (p) os << '.';
    os << 'g' << letters_[p];
  }
  return os.str();
}

std::strong_ordering Word::operator<=>(const Word& rhs) const {
  if (auto c = alphabet_ <=> rhs.alphabet_; c != 0) return c;
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  return letters_ <=> rhs.letters_;
}

MultiWord::MultiWord(std::vector<Word> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ConfigError("a multiword needs at least one factor");
}

MultiWord MultiWord::identity(const std::vector<int>& n) {
  std::vector<Word> parts;
  parts.reserve(n.size());
  for (int ni : n) parts.emplace_back(ni);
  return MultiWord(std::move(parts));
}

MultiWord MultiWord::in_factor(const std::vector<int>& n, int i, const Word& w) {
  if (i < 1 || i > static_cast<int>(n.size())) throw ConfigError("factor index out of range");
  if (w.alphabet() != n[i - 1]) throw ConfigError("alphabet mismatch for factor");
  MultiWord out = identity(n);
  out.parts_[i - 1] = w;
  return out;
}

std::vector<int> MultiWord::shape() const {
  std::vector<int> n;
  n.reserve(parts_.size());
  for (const auto& w : parts_) n.push_back(w.alphabet());
  return n;
}

std::size_t MultiWord::total_length() const {
  std::size_t s = 0;
  for (const auto& w : parts_) s += w.length();
  return s;
}

bool MultiWord::is_identity() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Word& w) { return w.empty(); });
}

MultiWord MultiWord::reversed() const {
  std::vector<Word> parts;
  parts.reserve(parts_.size());
  for (const auto& w : parts_) parts.push_back(w.reversed());
  return MultiWord(std::move(parts));
}

MultiWord MultiWord::operator*(const MultiWord& rhs) const {
  check_same_shape(*this, rhs);
  std::vector<Word> parts;
  parts.reserve(parts_.size());
  for (std::size_t i = 0; i < parts_.size(); ++i) parts.push_back(parts_[i] * rhs.parts_[i]);
  return MultiWord(std::move(parts));
}

std::string MultiWord::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ", ";
    s += parts_[i].str();
  }
  return s + ")";
}

std::strong_ordering MultiWord::operator<=>(const MultiWord& rhs) const {
  return parts_ <=> rhs.parts_;
}

void check_same_shape(const MultiWord& a, const MultiWord& b) {
  if (a.shape() != b.shape()) throw ConfigError("multiword shape mismatch");
}

MultiWord reverse(const MultiWord& w) { return w.reversed(); }

ComparabilityResult compare(Side side, const MultiWord& w, const MultiWord& v) {
  check_same_shape(w, v);
  ComparabilityResult out;
  out.c_plus = MultiWord::identity(w.shape());
  out.c_minus = out.c_plus;
  for (std::size_t i = 0; i < w.k(); ++i) {
    const Word& wi = w.part(i);
    const Word& vi = v.part(i);
    if (side == Side::right) {
      if (wi.has_suffix(vi)) {
        out.c_plus.part(i) = wi.drop_suffix(vi);
      } else if (vi.has_suffix(wi)) {
        out.c_minus.part(i) = vi.drop_suffix(wi);
      } else {
        return ComparabilityResult{false, MultiWord::identity(w.shape()),
                                   MultiWord::identity(w.shape())};
      }
    } else {
      if (wi.has_prefix(vi)) {
        out.c_plus.part(i) = wi.drop_prefix(vi);
      } else if (vi.has_prefix(wi)) {
        out.c_minus.part(i) = vi.drop_prefix(wi);
      } else {
        return ComparabilityResult{false, MultiWord::identity(w.shape()),
                                   MultiWord::identity(w.shape())};
      }
    }
  }
  out.comparable = true;
  return out;
}

bool lambda_membership(const MultiWord& a, const MultiWord& b) {
  check_same_shape(a, b);
  for (std::size_t i = 0; i < a.k(); ++i) {
    if (!a.part(i).empty() && !b.part(i).empty()) return false;
  }
  return true;
}

std::size_t count_words_up_to(int n, int d) {
  std::size_t total = 0, layer = 1;
  for (int p = 0; p <= d; ++p) {
    total += layer;
    layer *= static_cast<std::size_t>(n);
  }
  return total;
}

std::size_t graded_lex_rank(const Word& w) {
  const auto n = static_cast<std::size_t>(w.alphabet());
  std::size_t offset = 0, layer = 1;
  for (std::size_t p = 0; p < w.length(); ++p) {
    offset += layer;
    layer *= n;
  }
  std::size_t rank = 0;
  for (int j : w.letters()) rank = rank * n + static_cast<std::size_t>(j - 1);
  return offset + rank;
}

std::vector<Word> words_up_to(int n, int max_len) {
  std::vector<Word> out;
  if (max_len < 0) return out;
  out.reserve(count_words_up_to(n, max_len));
  out.emplace_back(n);
  std::size_t layer_begin = 0, layer_end = 1;
  for (int p = 1; p <= max_len; ++p) {
    for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
      for (int j = 1; j <= n; ++j) {
        std::vector<int> letters = out[idx].letters();
        letters.push_back(j);
        out.emplace_back(n, std::move(letters));
      }
    }
    layer_begin = layer_end;
    layer_end = out.size();
  }
  return out;
}

std::vector<MultiWord> multiwords_in_box(const std::vector<int>& n,
                                         const std::vector<int>& caps,
                                         int max_total) {
  if (caps.size() != n.size()) throw ConfigError("caps length must equal k");
  std::vector<std::vector<Word>> factors;
  for (std::size_t i = 0; i < n.size(); ++i) factors.push_back(words_up_to(n[i], caps[i]));

  std::vector<MultiWord> out;
  std::vector<Word> current(n.size());
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == n.size()) {
      out.emplace_back(current);
      return;
    }
    for (const auto& w : factors[i]) {
      const int len = static_cast<int>(w.length());
      if (used + len > max_total) break;  // graded order: longer words follow
      current[i] = w;
      self(self, i + 1, used + len);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<LambdaPair> lambda_pairs(const std::vector<int>& n, int max_total,
                                     const std::vector<int>& caps) {
  if (!caps.empty() && caps.size() != n.size()) throw ConfigError("caps length must equal k");
  // Per factor: (a_i, g0) for every a_i, then (g0, b_i) for nonempty b_i.
  std::vector<std::vector<std::pair<Word, Word>>> options(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const int cap = caps.empty() ? max_total : std::min(caps[i], max_total);
    for (const auto& w : words_up_to(n[i], cap)) options[i].emplace_back(w, Word(n[i]));
    for (const auto& w : words_up_to(n[i], cap))
      if (!w.empty()) options[i].emplace_back(Word(n[i]), w);
  }
  std::vector<LambdaPair> out;
  std::vector<Word> a(n.size()), b(n.size());
  auto rec = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == n.size()) {
      out.emplace_back(MultiWord(a), MultiWord(b));
      return;
    }
    for (const auto& [ai, bi] : options[i]) {
      const int len = static_cast<int>(ai.length() + bi.length());
      if (used + len > max_total) continue;
      a[i] = ai;
      b[i] = bi;
      self(self, i + 1, used + len);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polyball
