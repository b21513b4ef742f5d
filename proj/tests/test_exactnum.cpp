#include <prelie/exactnum.hpp>

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <unordered_set>

using prelie::Integer;
using prelie::Rational;

TEST(Rational, CanonicalFormAndPrinting) {
  EXPECT_EQ(Rational(Integer(6), Integer(-4)).str(), "-3/2");
  EXPECT_EQ(Rational(Integer(4), Integer(2)).str(), "2");
  EXPECT_EQ(Rational().str(), "0");
  EXPECT_EQ(Rational(-7).str(), "-7");
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "1", "-1/2", "691/2730", "123456789012345678901234567891/2"})
    EXPECT_EQ(Rational::parse(s).str(), s);
  EXPECT_EQ(Rational::parse("4/6"), Rational(Integer(2), Integer(3)));
  EXPECT_EQ(Rational::parse(" 3 "), Rational(3));
}

TEST(Rational, ParseRejectsGarbage) {
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, DivisionByZero) {
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(Integer(1), Integer(0)), std::domain_error);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  auto draw = [&] { return Rational(Integer(num(rng)), Integer(den(rng))); };
  for (int i = 0; i < 500; ++i) {
    const Rational a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ(-(-a), a);
  }
}

TEST(Rational, SignAndHash) {
  EXPECT_EQ(Rational(-3).sign(), -1);
  EXPECT_EQ(Rational(0).sign(), 0);
  EXPECT_TRUE(Rational(0).is_zero());
  std::unordered_set<Rational> set{Rational(Integer(1), Integer(2)), Rational(Integer(2), Integer(4))};
  EXPECT_EQ(set.size(), 1u);
}

TEST(Combinatorics, FactorialBinomialMultinomial) {
  EXPECT_EQ(prelie::factorial(0), 1);
  EXPECT_EQ(prelie::factorial(10), 3628800);
  EXPECT_EQ(prelie::factorial(25), Integer("15511210043330985984000000"));
  EXPECT_EQ(prelie::binomial(10, 3), 120);
  EXPECT_EQ(prelie::binomial(3, 5), 0);
  EXPECT_EQ(prelie::multinomial({2, 1, 1}), 12);
  EXPECT_EQ(prelie::multinomial({}), 1);
}

TEST(Combinatorics, PascalRule) {
  for (unsigned long n = 1; n <= 20; ++n)
    for (unsigned long k = 1; k <= n; ++k)
      EXPECT_EQ(prelie::binomial(n, k), prelie::binomial(n - 1, k - 1) + prelie::binomial(n - 1, k));
}

TEST(Bernoulli, KnownValuesWithNegativeB1) {
  const char* expected[] = {"1", "-1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66", "0", "-691/2730"};
  for (unsigned n = 0; n < 13; ++n) EXPECT_EQ(prelie::bernoulli(n).str(), expected[n]) << n;
  EXPECT_EQ(prelie::bernoulli(20).str(), "-174611/330");
}

TEST(Bernoulli, OddIndicesVanish) {
  for (unsigned n = 3; n < 30; n += 2) EXPECT_TRUE(prelie::bernoulli(n).is_zero()) << n;
}
