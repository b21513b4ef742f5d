#pragma once

// Finite rational linear combinations over an ordered basis, and commutative
// monomials (multisets) over a generator type.

#include <prelie/exactnum.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

namespace prelie {

/// Finite map basis element -> nonzero rational. Zero coefficients are never
/// stored, so two combinations are equal iff their maps are equal.
template <class Key>
class LinearCombination {
 public:
  using key_type = Key;
  using map_type = std::map<Key, Rational>;
  using const_iterator = typename map_type::const_iterator;

  LinearCombination() = default;
  explicit LinearCombination(const Key& k, const Rational& c = Rational(1)) { add(k, c); }
  LinearCombination(std::initializer_list<std::pair<Key, Rational>> init) {
    for (const auto& [k, c] : init) add(k, c);
  }

  void add(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Rational coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinearCombination& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator*(LinearCombination a, const Rational& s) { return a *= s; }
  friend LinearCombination operator*(const Rational& s, LinearCombination a) { return a *= s; }
  friend LinearCombination operator-(LinearCombination a) { return a *= Rational(-1); }

  friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LinearCombination& a, const LinearCombination& b) { return !(a == b); }

  /// Keeps only the terms whose key satisfies `pred`.
  template <class Pred>
  LinearCombination filtered(Pred&& pred) const {
    LinearCombination out;
    for (const auto& [k, c] : terms_)
      if (pred(k)) out.terms_.emplace_hint(out.terms_.end(), k, c);
    return out;
  }

  /// Applies a linear map given on basis elements.
  template <class F>
  auto mapped(F&& f) const -> decltype(f(std::declval<const Key&>())) {
    decltype(f(std::declval<const Key&>())) out;
    for (const auto& [k, c] : terms_) {
      auto image = f(k);
      image *= c;
      out += image;
    }
    return out;
  }

 private:
  map_type terms_;
};

/// Commutative monomial over generators of type G: a sorted multiset. The
/// empty monomial is the unit 1.
template <class G>
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<G> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
  }
  Monomial(std::initializer_list<G> init) : Monomial(std::vector<G>(init)) {}

  const std::vector<G>& factors() const { return factors_; }
  std::size_t degree() const { return factors_.size(); }
  bool is_unit() const { return factors_.empty(); }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    std::merge(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
               std::back_inserter(r.factors_));
    return r;
  }

  /// Distinct factors with their multiplicities, in sorted order.
  std::vector<std::pair<G, unsigned long>> multiplicities() const {
    std::vector<std::pair<G, unsigned long>> out;
    for (const auto& g : factors_) {
      if (!out.empty() && out.back().first == g)
        ++out.back().second;
      else
        out.emplace_back(g, 1);
    }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.factors_.size() != b.factors_.size()) return a.factors_.size() < b.factors_.size();
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                        b.factors_.end());
  }

 private:
  std::vector<G> factors_;
};

template <class G>
using Polynomial = LinearCombination<Monomial<G>>;

/// Element of the k-fold tensor power of a polynomial algebra, keyed by the
/// tuple of slot monomials.
template <class G>
using Tensor = LinearCombination<std::vector<Monomial<G>>>;

}  // namespace prelie
