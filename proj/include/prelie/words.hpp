#pragma once

// Pre-Lie algebra of non-empty words under insertion, its symmetric brace in
// closed form, and the dual Hopf algebra of commutative polynomials in words.

#include <prelie/exactnum.hpp>
#include <prelie/hopf.hpp>
#include <prelie/linear.hpp>
#include <prelie/prelie.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prelie {

/// Non-empty word; each letter is a single-character symbol. Ordered by
/// length, then lexicographically.
class Word {
 public:
  explicit Word(std::string letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::domain_error("Word: words are non-empty");
  }

  const std::string& letters() const { return letters_; }
  int size() const { return static_cast<int>(letters_.size()); }
  char operator[](std::size_t i) const { return letters_[i]; }

  /// Letters at the given 0-based positions, in order.
  Word restrict_to(const std::vector<int>& positions) const {
    std::string s;
    s.reserve(positions.size());
    for (int p : positions) s.push_back(letters_.at(static_cast<std::size_t>(p)));
    return Word(std::move(s));
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    return a.letters_ < b.letters_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.letters_; }

 private:
  std::string letters_;
};

using WordCombination = LinearCombination<Word>;
using WordMonomial = Monomial<Word>;
using WordPoly = Polynomial<Word>;
using WordTensor = Tensor<Word>;

inline std::string to_string(const Word& w) { return w.letters(); }

/// Factors joined by "·"; the unit prints as "1".
inline std::string to_string(const WordMonomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& w : m) {
    if (!s.empty()) s += "·";
    s += w.letters();
  }
  return s;
}

inline WordMonomial parse_word_monomial(std::string_view text) {
  if (text.empty() || text == "1") return WordMonomial();
  std::vector<Word> words;
  const std::string_view sep = "·";
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    words.emplace_back(std::string(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return WordMonomial(std::move(words));
}

/// All words of the given length over the alphabet, in lexicographic order of
/// the alphabet as listed.
inline std::vector<Word> enumerate_words(const std::string& alphabet, int length) {
  if (length < 1) throw std::domain_error("enumerate_words: length must be positive");
  if (alphabet.empty()) return {};
  std::vector<Word> out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
  while (true) {
    std::string s;
    for (auto d : digits) s.push_back(alphabet[d]);
    out.emplace_back(std::move(s));
    int pos = length - 1;
    while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == alphabet.size()) digits[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return out;
}

inline std::vector<Word> enumerate_words_up_to(const std::string& alphabet, int max_length) {
  std::vector<Word> out;
  for (int n = 1; n <= max_length; ++n) {
    auto level = enumerate_words(alphabet, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// α ◁ γ: γ inserted at each of the |α|-1 interior positions of α.
inline WordCombination word_prelie(const Word& alpha, const Word& gamma) {
  WordCombination out;
  const auto& a = alpha.letters();
  for (std::size_t cut = 1; cut < a.size(); ++cut) out.add(Word(a.substr(0, cut) + gamma.letters() + a.substr(cut)), 1);
  return out;
}

struct WordPreLie {
  using basis_type = Word;
  static int grade(const Word& w) { return w.size(); }
  static WordCombination product(const Word& a, const Word& b) { return word_prelie(a, b); }
};

using WordSeries = Series<WordPreLie>;

/// α{γ_1..γ_n} in closed form: for every ordering of the arguments and every
/// cut sequence 1 <= p_1 <= ... <= p_n <= |α|-1, the arguments inserted at the
/// cuts in that order.
inline WordCombination word_brace(const Word& alpha, const std::vector<Word>& args) {
  if (args.empty()) return WordCombination(alpha);
  const auto& a = alpha.letters();
  const std::size_t n = args.size();
  WordCombination out;
  if (a.size() < 2) return out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> cuts(n, 1);
  const std::size_t last = a.size() - 1;
  do {
    std::fill(cuts.begin(), cuts.end(), 1);
    while (true) {
      std::string s = a.substr(0, cuts[0]);
      for (std::size_t i = 0; i < n; ++i) {
        s += args[perm[i]].letters();
        const std::size_t next = i + 1 < n ? cuts[i + 1] : a.size();
        s += a.substr(cuts[i], next - cuts[i]);
      }
      out.add(Word(std::move(s)), 1);
      // next non-decreasing cut sequence
      std::size_t pos = n;
      while (pos > 0 && cuts[pos - 1] == last) --pos;
      if (pos == 0) break;
      ++cuts[pos - 1];
      for (std::size_t j = pos; j < n; ++j) cuts[j] = cuts[pos - 1];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline WordCombination word_brace_recursive(const Word& alpha, const std::vector<Word>& args) {
  return oudom_guin_brace<WordPreLie>(alpha, args);
}

namespace detail {

inline void odd_factorizations(const std::string& w, std::size_t pos, std::string& left, std::vector<Word>& evens,
                               WordTensor& out) {
  // `pos` starts an even factor; the final odd factor must be non-empty.
  const std::size_t n = w.size();
  for (std::size_t even_end = pos + 1; even_end < n; ++even_end) {
    evens.emplace_back(w.substr(pos, even_end - pos));
    for (std::size_t odd_end = even_end; odd_end <= n; ++odd_end) {
      const std::string odd = w.substr(even_end, odd_end - even_end);
      left += odd;
      if (odd_end == n) {
        if (!odd.empty()) out.add({WordMonomial{Word(left)}, WordMonomial(evens)}, 1);
      } else {
        odd_factorizations(w, odd_end, left, evens, out);
      }
      left.resize(left.size() - odd.size());
    }
    evens.pop_back();
  }
}

}  // namespace detail

/// δ̄(w): sum over factorizations w = w_1 w_2 ⋯ w_{2m+1}, m >= 1, with w_1,
/// w_{2m+1} and all even factors non-empty, of w_1 w_3 ⋯ w_{2m+1} ⊗ w_2·w_4⋯w_{2m}.
inline WordTensor word_dual_coproduct(const Word& w) {
  WordTensor out;
  const auto& s = w.letters();
  for (std::size_t first = 1; first + 2 <= s.size(); ++first) {
    std::string left = s.substr(0, first);
    std::vector<Word> evens;
    detail::odd_factorizations(s, first, left, evens, out);
  }
  return out;
}

inline const MonomialHopf<Word>& word_hopf() {
  static const MonomialHopf<Word> hopf(word_dual_coproduct);
  return hopf;
}

inline WordTensor word_full_coproduct(const WordPoly& x) { return word_hopf().coproduct(x); }
inline WordTensor word_full_coproduct(const Word& w) { return word_hopf().coproduct(w); }

inline WordTensor word_iterated_coproduct(const WordPoly& x, int k, CoproductFlavor flavor) {
  return word_hopf().iterated(x, k, flavor);
}

/// Part of δ(w) with a single word on the left and a degree-n monomial on the
/// right.
inline WordTensor word_coproduct_component(const Word& w, std::size_t n) {
  return word_full_coproduct(w).filtered([n](const std::vector<WordMonomial>& slots) {
    return slots[0].degree() == 1 && slots[1].degree() == n;
  });
}

inline Integer word_norm(const Word&) { return 1; }

/// Orthonormal word pairing, extended to monomials as a permanent.
inline Rational word_pairing(const WordPoly& x, const WordPoly& y) { return polynomial_pairing(x, y, word_norm); }
inline Rational word_pairing(const WordMonomial& x, const WordMonomial& y) { return monomial_pairing(x, y, word_norm); }
inline Rational word_tensor_pairing(const WordTensor& x, const WordTensor& y) {
  return tensor_pairing(x, y, word_norm);
}

}  // namespace prelie
