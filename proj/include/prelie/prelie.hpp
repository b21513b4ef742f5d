#pragma once

// Generic graded pre-Lie machinery over a basis policy: truncated series,
// the symmetric brace from the Oudom-Guin recursion, the pre-Lie exponential
// and the Magnus fixed point.
//
// A policy A provides
//   using basis_type = ...;
//   static int grade(const basis_type&);            // >= 1
//   static LinearCombination<basis_type> product(const basis_type&, const basis_type&);
// with product graded: every term of x ◁ y has grade(x) + grade(y).

#include <prelie/exactnum.hpp>
#include <prelie/linear.hpp>

#include <algorithm>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prelie {

template <class A>
concept PreLieAlgebra = requires(const typename A::basis_type& x) {
  { A::grade(x) } -> std::convertible_to<int>;
  { A::product(x, x) } -> std::same_as<LinearCombination<typename A::basis_type>>;
};

inline constexpr int kUnbounded = std::numeric_limits<int>::max();

/// Finite combination of basis elements, all of grade <= order.
template <PreLieAlgebra A>
class Series {
 public:
  using basis_type = typename A::basis_type;
  using combination = LinearCombination<basis_type>;

  Series() = default;
  explicit Series(int order) : order_(order) { check_order(); }
  Series(combination terms, int order) : order_(order) {
    check_order();
    terms_ = std::move(terms).filtered([order](const basis_type& b) { return A::grade(b) <= order; });
  }
  static Series generator(const basis_type& b, int order = kUnbounded) { return Series(combination(b), order); }

  const combination& terms() const { return terms_; }
  int order() const { return order_; }
  Rational coefficient(const basis_type& b) const { return terms_.coefficient(b); }
  bool is_zero() const { return terms_.empty(); }

  /// Terms of exactly the given grade.
  Series homogeneous(int g) const {
    return Series(terms_.filtered([g](const basis_type& b) { return A::grade(b) == g; }), order_);
  }

  Series truncated(int order) const { return Series(terms_, std::min(order, order_)); }

  friend Series operator+(const Series& a, const Series& b) {
    return Series(a.terms_ + b.terms_, std::min(a.order_, b.order_));
  }
  friend Series operator-(const Series& a, const Series& b) {
    return Series(a.terms_ - b.terms_, std::min(a.order_, b.order_));
  }
  friend Series operator-(const Series& a) { return Series(-a.terms_, a.order_); }
  friend Series operator*(const Rational& s, const Series& a) { return Series(s * a.terms_, a.order_); }

  /// Equality of coefficients; orders are not compared.
  friend bool operator==(const Series& a, const Series& b) { return a.terms_ == b.terms_; }

 private:
  void check_order() const {
    if (order_ < 1) throw std::domain_error("series truncation order must be positive");
  }

  combination terms_;
  int order_ = kUnbounded;
};

/// Bilinear extension of A::product, dropping terms above `order`.
template <PreLieAlgebra A>
LinearCombination<typename A::basis_type> product(const LinearCombination<typename A::basis_type>& x,
                                                  const LinearCombination<typename A::basis_type>& y,
                                                  int order = kUnbounded) {
  LinearCombination<typename A::basis_type> out;
  for (const auto& [a, ca] : x) {
    const int ga = A::grade(a);
    for (const auto& [b, cb] : y) {
      if (order != kUnbounded && ga + A::grade(b) > order) continue;
      auto p = A::product(a, b);
      p *= ca * cb;
      out += p;
    }
  }
  return out;
}

template <PreLieAlgebra A>
Series<A> product(const Series<A>& x, const Series<A>& y) {
  const int order = std::min(x.order(), y.order());
  return Series<A>(product<A>(x.terms(), y.terms(), order), order);
}

/// Symmetric brace v{w_1,...,w_n} by the Oudom-Guin recursion
///   v{w_1..w_n} = (v{w_1..w_{n-1}}) ◁ w_n - sum_i v{w_1,..,w_i ◁ w_n,..,w_{n-1}},
/// multilinear in all arguments.
template <PreLieAlgebra A>
LinearCombination<typename A::basis_type> oudom_guin_brace(
    const LinearCombination<typename A::basis_type>& v,
    const std::vector<LinearCombination<typename A::basis_type>>& args) {
  if (args.empty()) return v;
  std::vector<LinearCombination<typename A::basis_type>> head(args.begin(), args.end() - 1);
  const auto& last = args.back();
  auto result = product<A>(oudom_guin_brace<A>(v, head), last);
  for (std::size_t i = 0; i < head.size(); ++i) {
    auto modified = head;
    modified[i] = product<A>(head[i], last);
    result -= oudom_guin_brace<A>(v, modified);
  }
  return result;
}

template <PreLieAlgebra A>
LinearCombination<typename A::basis_type> oudom_guin_brace(const typename A::basis_type& v,
                                                           const std::vector<typename A::basis_type>& args) {
  std::vector<LinearCombination<typename A::basis_type>> lcs;
  lcs.reserve(args.size());
  for (const auto& a : args) lcs.emplace_back(a);
  return oudom_guin_brace<A>(LinearCombination<typename A::basis_type>(v), lcs);
}

namespace detail {

template <PreLieAlgebra A>
void require_positive_grades(const Series<A>& a, int order, const char* what) {
  if (std::min(order, a.order()) == kUnbounded) throw std::domain_error(std::string(what) + ": needs a finite order");
  for (const auto& [b, c] : a.terms())
    if (A::grade(b) < 1) throw std::domain_error(std::string(what) + ": argument has a constant term");
}

}  // namespace detail

/// exp◁(a) = sum_{n>=1} r^(n)_a(a) / n!, with r^(1) = a and
/// r^(n) = r^(n-1) ◁ a, truncated at `order`.
template <PreLieAlgebra A>
Series<A> prelie_exp(const Series<A>& a, int order) {
  detail::require_positive_grades(a, order, "prelie_exp");
  const int n_max = std::min(order, a.order());
  Series<A> base = a.truncated(n_max);
  Series<A> power = base;
  Series<A> total = base;
  for (int n = 2; n <= n_max && !power.is_zero(); ++n) {
    power = product(power, base);
    total = total + Rational(Integer(1), factorial(static_cast<unsigned long>(n))) * power;
  }
  return total;
}

/// Solution of Ω = sum_{n>=0} (B_n / n!) r^(n+1)_Ω(a), truncated at `order`;
/// the n = 0 term is a and the n = 1 term is B_1 (a ◁ Ω). Each pass fixes one
/// more grade, so `order` passes starting from Ω = a suffice.
template <PreLieAlgebra A>
Series<A> magnus_fixed_point(const Series<A>& a, int order) {
  detail::require_positive_grades(a, order, "magnus_fixed_point");
  const int n_max = std::min(order, a.order());
  const Series<A> base = a.truncated(n_max);
  Series<A> omega = base;
  for (int pass = 1; pass < n_max; ++pass) {
    Series<A> next = base;
    Series<A> r = base;
    for (int n = 1; n < n_max && !r.is_zero(); ++n) {
      r = product(r, omega);
      Rational b = bernoulli(static_cast<unsigned>(n));
      if (b.is_zero()) continue;
      next = next + (b / Rational(factorial(static_cast<unsigned long>(n)))) * r;
    }
    omega = next;
  }
  return omega;
}

}  // namespace prelie
