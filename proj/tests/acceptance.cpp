// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact; the time budgets below are wall-clock seconds.

#include <prelie/forest.hpp>
#include <prelie/freeprelie.hpp>
#include <prelie/nc.hpp>
#include <prelie/prelie.hpp>
#include <prelie/trees.hpp>
#include <prelie/verify.hpp>
#include <prelie/words.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace prelie;

namespace {

constexpr double kBudgetExpCm = 5;
constexpr double kBudgetMagnus = 30;
constexpr double kBudgetOmega = 60;
constexpr double kBudgetForest = 120;
constexpr double kBudgetCumulants = 120;
constexpr double kBudgetUntimed = 600;

struct Outcome {
  bool ok = true;
  long instances = 0;
  std::string detail;

  void check(bool good, const std::function<std::string()>& describe) {
    ++instances;
    if (good || !ok) {
      ok = ok && good;
      return;
    }
    ok = false;
    detail = describe();
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= budget;
  const bool pass = out.ok && in_time && out.instances > 0;
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s  [%ld instances, %.2fs / %.0fs]", id, pass ? "PASS" : "FAIL", title, out.instances, secs,
              budget);
  if (!out.ok) std::printf("  first failure: %s", out.detail.c_str());
  if (!in_time) std::printf("  over time budget");
  std::printf("\n");
  std::fflush(stdout);
}

const char* flavor_name(CoproductFlavor f) {
  switch (f) {
    case CoproductFlavor::reduced: return "reduced";
    case CoproductFlavor::full: return "full";
    case CoproductFlavor::irr: return "irr";
  }
  return "?";
}

}  // namespace

int main() {
  const CoproductFlavor flavors[] = {CoproductFlavor::reduced, CoproductFlavor::full, CoproductFlavor::irr};

  criterion(1, "exp(.) coefficient equals CM(t), trees <= 6", kBudgetExpCm, [] {
    Outcome out;
    const auto e = exp_of_generator(6);
    for (const auto& t : enumerate_trees_up_to(6))
      out.check(e.coefficient(t) == cm_coefficient(t), [&] {
        return t.key() + ": coefficient " + e.coefficient(t).str() + ", CM " + cm_coefficient(t).str();
      });
    return out;
  });
  {
    // Diagnostic for criterion 1: the exponential carries CM(t)/|t|!.
    const auto e = exp_of_generator(6);
    bool scaled = true;
    for (const auto& t : enumerate_trees_up_to(6))
      scaled = scaled && e.coefficient(t) * Rational(factorial(static_cast<unsigned long>(t.size()))) == cm_coefficient(t);
    std::printf("  note: |t|! * exp(.) coefficient == CM(t) for all trees <= 6: %s\n", scaled ? "yes" : "no");
  }

  criterion(2, "Magnus: fixed point, closed form and sol1 agree to order 6", kBudgetMagnus, [] {
    Outcome out;
    const auto fixed = magnus_of_generator(6);
    const auto closed = magnus_closed_form(6);
    const auto via_sol1 = magnus_via_sol1(6);
    for (const auto& t : enumerate_trees_up_to(6))
      out.check(fixed.coefficient(t) == closed.coefficient(t) && closed.coefficient(t) == via_sol1.coefficient(t),
                [&] { return t.key(); });
    out.check(fixed == closed && closed == via_sol1, [] { return std::string("series differ outside the tree range"); });
    return out;
  });

  criterion(3, "omega direct equals the recursion, all trees <= 9", kBudgetOmega, [] {
    Outcome out;
    long large = 0;
    for (const auto& t : enumerate_trees_up_to(9)) {
      out.check(murua_omega(t) == murua_omega_recursive(t), [&] { return t.key(); });
      if (t.size() >= 8) ++large;
    }
    out.check(large == 115 + 286, [&] { return "trees of size 8 and 9: " + std::to_string(large); });
    return out;
  });

  criterion(4, "forest formula equals direct iteration; dropping sym(F) is caught", kBudgetForest, [&] {
    Outcome out;
    const ForestEngine<CKBasis> ck{CKBasis{}};
    for (const auto& t : enumerate_trees_up_to(6))
      for (int k = 1; k <= 4; ++k)
        for (auto f : flavors)
          out.check(ck.formula(t, k, f) == direct_iterated_coproduct(t, k, f, ck.basis()),
                    [&] { return t.key() + " k=" + std::to_string(k) + " " + flavor_name(f); });
    const ForestEngine<WordBasis> words{WordBasis{"ab"}};
    for (const auto& w : enumerate_words_up_to("ab", 5))
      for (int k = 1; k <= 4; ++k)
        for (auto f : flavors)
          out.check(words.formula(w, k, f) == direct_iterated_coproduct(w, k, f, words.basis()),
                    [&] { return w.letters() + " k=" + std::to_string(k) + " " + flavor_name(f); });
    // B+(2-chain, 2-chain): two root children decorated by distinct trees of equal index.
    const RootedTree repeated = b_plus(Forest{chain(2), chain(2)});
    const auto direct = direct_iterated_coproduct(repeated, 3, CoproductFlavor::reduced, ck.basis());
    out.check(ck.formula(repeated, 3, CoproductFlavor::reduced, {false}) != direct,
              [] { return std::string("mutant without sym(F) agrees with direct iteration on [[[]][[]]] k=3"); });
    return out;
  });

  criterion(5, "lambda(T) = 6 on the 13-vertex decorated tree", kBudgetUntimed, [] {
    using DT = DecoratedTree<RootedTree>;
    const RootedTree dot;
    const RootedTree chain2 = chain(2);
    const RootedTree cherry = b_plus(Forest{dot, dot});
    const RootedTree inner = b_plus(Forest{chain2, dot, dot, dot});
    const RootedTree outer = b_plus(Forest{cherry, inner, cherry});
    auto leaf = [](const RootedTree& t) { return DT::leaf(t, t.key()); };
    auto node = [](const RootedTree& a, const RootedTree& b, std::vector<DT> ch) {
      return DT::node(a, b, a.key(), b.key(), std::move(ch));
    };
    const DT T = node(outer, dot,
                      {leaf(cherry), node(inner, cherry, {leaf(chain2), leaf(dot)}), node(cherry, dot, {leaf(dot), leaf(dot)})});
    Outcome out;
    out.check(outer.size() == 13, [] { return std::string("instance does not have 13 vertices"); });
    const Rational lambda = lambda_coeff(T, CKBasis{});
    out.check(lambda == Rational(6), [&] { return "lambda = " + lambda.str(); });
    return out;
  });

  criterion(6, "exp(Omega(.)) = . to order 5", kBudgetUntimed, [] {
    Outcome out;
    const auto back = prelie_exp(magnus_of_generator(5), 5);
    out.check(back == generator_series(5), [] { return std::string("series differ"); });
    return out;
  });

  criterion(7, "word brace duality, |w| <= 5 over {a,b}", kBudgetUntimed, [] {
    const auto c = verify::word_duality("ab", 5);
    Outcome out;
    out.instances = c.instances;
    out.ok = c.failures == 0;
    out.detail = c.first_failure;
    return out;
  });

  criterion(8, "cumulants: round trips, direct vs via moments, exp/Magnus theorems", kBudgetCumulants, [] {
    Outcome out;
    std::mt19937 rng(20240601);
    const Brand brands[] = {Brand::moment, Brand::free, Brand::boolean, Brand::monotone};
    const std::string vars = "ab";
    const int n = 6;
    for (int trial = 0; trial < 3; ++trial) {
      const auto moments = verify::random_table(Brand::moment, vars, n, rng);
      for (Brand b : brands) {
        out.check(to_moments(from_moments(moments, b)) == moments, [&] { return "round trip via " + to_string(b); });
        const auto source = verify::random_table(b, vars, n, rng);
        out.check(to_moments(source).brand() == Brand::moment && from_moments(to_moments(source), b) == source,
                  [&] { return "round trip from " + to_string(b); });
        for (Brand target : brands)
          out.check(convert(source, target, Route::direct) == convert(source, target, Route::via_moments),
                    [&] { return to_string(b) + " -> " + to_string(target); });
      }
      const auto rho = verify::random_table(Brand::monotone, vars, n, rng);
      const auto beta = convert(rho, Brand::boolean);
      for (const auto& w : rho.words()) {
        out.check(exp_functional(rho, w) == beta.at(w), [&] { return "beta = exp(rho) at " + w.letters(); });
        out.check(magnus_functional(beta, w) == rho.at(w), [&] { return "rho = Omega(beta) at " + w.letters(); });
      }
    }
    return out;
  });

  criterion(9, "tree counts, Cayley sums and Catalan counts", kBudgetUntimed, [] {
    Outcome out;
    const long counts[] = {0, 1, 1, 2, 4, 9, 20, 48, 115, 286};
    const auto recursion = verify::rooted_tree_counts(9);
    for (int n = 1; n <= 9; ++n) {
      const auto size = static_cast<long>(enumerate_trees(n).size());
      out.check(size == counts[n] && recursion[static_cast<std::size_t>(n)] == counts[n],
                [&] { return "tree count n=" + std::to_string(n); });
    }
    for (int n = 1; n <= 8; ++n) {
      Rational sum;
      for (const auto& t : enumerate_trees(n))
        sum += Rational(factorial(static_cast<unsigned long>(n))) / Rational(sigma(t));
      Integer power = 1;
      for (int i = 1; i < n; ++i) power *= n;
      out.check(sum == Rational(power), [&] { return "Cayley n=" + std::to_string(n); });
    }
    auto catalan = [](int m) -> Integer {
      return binomial(2 * static_cast<unsigned long>(m), static_cast<unsigned long>(m)) / (m + 1);
    };
    for (int n = 1; n <= 8; ++n) {
      out.check(Integer(enumerate_nc(n).size()) == catalan(n), [&] { return "|NC(" + std::to_string(n) + ")|"; });
      out.check(Integer(enumerate_nc_irr(n).size()) == catalan(n - 1),
                [&] { return "|NC_irr(" + std::to_string(n) + ")|"; });
    }
    return out;
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
