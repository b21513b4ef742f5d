#pragma once

// Exact rational arithmetic over GMP integers, plus Bernoulli numbers.

#include <gmpxx.h>

#include <concepts>
#include <cstddef>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prelie {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  template <std::signed_integral T>
  Rational(T v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  template <std::unsigned_integral T>
  Rational(T v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Parses "p", "p/q" or "-p/q".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s));
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      return Rational(num, den);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
  }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  /// "p/q", or "p" when q = 1.
  std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Multinomial coefficient (k_1 + ... + k_m)! / (k_1! ... k_m!).
inline Integer multinomial(const std::vector<unsigned long>& parts) {
  Integer r = 1;
  unsigned long total = 0;
  for (auto k : parts) {
    total += k;
    r *= binomial(total, k);
  }
  return r;
}

/// Bernoulli number B_n with B_1 = -1/2, from sum_{k=0}^{n} C(n+1,k) B_k = 0.
/// Memoized; safe to call concurrently.
inline Rational bernoulli(unsigned n) {
  static std::mutex mutex;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (table.size() <= n) {
    const unsigned m = static_cast<unsigned>(table.size());
    Rational acc;
    for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * table[k];
    table.push_back(-acc / Rational(Integer(m + 1)));
  }
  return table[n];
}

}  // namespace prelie

template <>
struct std::hash<prelie::Rational> {
  std::size_t operator()(const prelie::Rational& r) const { return std::hash<std::string>{}(r.str()); }
};
