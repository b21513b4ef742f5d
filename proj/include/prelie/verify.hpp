#pragma once

// Self-check suites run by `prelie verify`: each identity is evaluated over
// every instance up to the configured sizes, comparing two independent routes.

#include <prelie/forest.hpp>
#include <prelie/freeprelie.hpp>
#include <prelie/io.hpp>
#include <prelie/nc.hpp>
#include <prelie/prelie.hpp>
#include <prelie/trees.hpp>
#include <prelie/words.hpp>

#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prelie::verify {

struct Config {
  int tree_order = 6;
  int max_k = 4;
  int word_length = 5;
  int cumulant_length = 6;
  std::string alphabet = "ab";
  unsigned seed = 20240601;
};

struct Check {
  Check(std::string suite_name, std::string identity) : suite(std::move(suite_name)), name(std::move(identity)) {}

  std::string suite;
  std::string name;
  long instances = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && instances > 0; }
  void record(bool ok, const std::function<std::string()>& describe) {
    ++instances;
    if (ok) return;
    if (failures++ == 0) first_failure = describe();
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"trees", "hopf", "forest", "magnus", "words", "cumulants"};
  return names;
}

/// Unlabelled rooted tree counts from a(n+1) = (1/n) sum_k (sum_{d|k} d a(d)) a(n-k+1).
inline std::vector<Integer> rooted_tree_counts(int n_max) {
  std::vector<Integer> a(static_cast<std::size_t>(n_max) + 1, 0);
  if (n_max >= 1) a[1] = 1;
  for (int n = 1; n < n_max; ++n) {
    Integer total = 0;
    for (int k = 1; k <= n; ++k) {
      Integer s = 0;
      for (int d = 1; d <= k; ++d)
        if (k % d == 0) s += d * a[static_cast<std::size_t>(d)];
      total += s * a[static_cast<std::size_t>(n - k + 1)];
    }
    a[static_cast<std::size_t>(n + 1)] = total / n;
  }
  return a;
}

inline std::vector<Check> run_trees(const Config& cfg) {
  const int order = cfg.tree_order;
  Check counts{"trees", "tree counts match the multiset recursion"};
  Check cayley{"trees", "sum of n!/sigma(t) equals n^(n-1)"};
  Check factorial_check{"trees", "m(t) * t! = |t|!"};
  Check omega{"trees", "omega direct equals Bernoulli recursion"};
  Check weak{"trees", "weak k-linearizations decompose into surjective ones"};
  Check canonical{"trees", "bracket string round trip"};
  const auto expected = rooted_tree_counts(order);
  for (int n = 1; n <= order; ++n) {
    const auto trees = enumerate_trees(n);
    counts.record(Integer(static_cast<long>(trees.size())) == expected[static_cast<std::size_t>(n)],
                  [&] { return "n=" + std::to_string(n); });
    Rational sum;
    for (const auto& t : trees) sum += Rational(factorial(static_cast<unsigned long>(n))) / Rational(sigma(t));
    Integer power = 1;
    for (int i = 1; i < n; ++i) power *= n;
    cayley.record(sum == Rational(power), [&] { return "n=" + std::to_string(n); });
    for (const auto& t : trees) {
      factorial_check.record(num_linearizations(t) * tree_factorial(t) == factorial(static_cast<unsigned long>(n)),
                             [&] { return t.key(); });
      omega.record(murua_omega(t) == murua_omega_recursive(t), [&] { return t.key(); });
      canonical.record(parse_tree(t.key()) == t, [&] { return t.key(); });
      for (int k = 1; k <= n + 1; ++k) {
        Integer total = 0;
        for (int l = 1; l <= k; ++l)
          total += binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(l)) * count_k_linearizations(t, l);
        weak.record(total == count_weak_k_linearizations(t, k), [&] { return t.key() + " k=" + std::to_string(k); });
      }
    }
  }
  return {counts, cayley, factorial_check, omega, weak, canonical};
}

inline std::vector<Check> run_hopf(const Config& cfg) {
  const int order = std::min(cfg.tree_order, 5);
  Check prelie_identity{"hopf", "grafting is right pre-Lie"};
  Check braces{"hopf", "Oudom-Guin brace equals simultaneous grafting"};
  Check assoc{"hopf", "Grossman-Larson product is associative"};
  Check duality{"hopf", "<a*b|x> = <a(x)b|Delta x>"};
  Check iterated{"hopf", "left-iterated grafting pairs with irreducible iterated coproduct"};
  Check brace_lemma{"hopf", "nested braces pair with reduced iterated coproduct"};

  const auto small = enumerate_trees_up_to(3);
  for (const auto& t : small)
    for (const auto& u : small)
      for (const auto& v : small) {
        const TreeCombination tu(t), uu(u), vu(v);
        auto lhs = product<TreePreLie>(product<TreePreLie>(tu, uu), vu) - product<TreePreLie>(tu, graft(u, v));
        auto rhs = product<TreePreLie>(product<TreePreLie>(tu, vu), uu) - product<TreePreLie>(tu, graft(v, u));
        prelie_identity.record(lhs == rhs, [&] { return t.key() + "," + u.key() + "," + v.key(); });
      }

  for (const auto& t : enumerate_trees_up_to(4))
    for (int s = 1; s <= 3; ++s)
      for (const auto& args : enumerate_forests(s))
        braces.record(brace(t, args) == brace_direct(t, args), [&] { return t.key() + "{" + to_string(args) + "}"; });

  std::vector<Forest> pieces;
  for (int n = 0; n <= 2; ++n)
    for (auto& f : enumerate_forests(n)) pieces.push_back(f);
  for (const auto& a : pieces)
    for (const auto& b : pieces)
      for (const auto& c : pieces) {
        const ForestPoly pa(a), pb(b), pc(c);
        assoc.record(gl_product(gl_product(pa, pb), pc) == gl_product(pa, gl_product(pb, pc)),
                     [&] { return to_string(a) + "," + to_string(b) + "," + to_string(c); });
      }

  for (int total = 0; total <= order; ++total)
    for (int sa = 0; sa <= total; ++sa)
      for (const auto& a : enumerate_forests(sa))
        for (const auto& b : enumerate_forests(total - sa)) {
          const auto ab = gl_product(ForestPoly(a), ForestPoly(b));
          for (const auto& x : enumerate_forests(total)) {
            TensorPoly left;
            left.add({a, b}, 1);
            duality.record(pairing(ab, ForestPoly(x)) == tensor_pairing(left, ck_coproduct(ForestPoly(x))),
                           [&] { return to_string(a) + "*" + to_string(b) + " vs " + to_string(x); });
          }
        }

  for (int n = 2; n <= order; ++n)
    for (const auto& w : enumerate_trees(n))
      for (int k = 2; k <= std::min(n, cfg.max_k); ++k) {
        const auto irr = irr_iterated_coproduct(w, k);
        // every ordered tuple of trees whose sizes sum to n
        std::function<void(int, std::vector<RootedTree>&)> rec = [&](int left, std::vector<RootedTree>& tuple) {
          if (static_cast<int>(tuple.size()) == k) {
            if (left != 0) return;
            TreeCombination prod(tuple[0]);
            for (std::size_t i = 1; i < tuple.size(); ++i) prod = product<TreePreLie>(prod, TreeCombination(tuple[i]));
            TensorPoly slots;
            std::vector<Forest> s;
            for (const auto& t : tuple) s.push_back(Forest{t});
            slots.add(s, 1);
            iterated.record(prod.coefficient(w) * Rational(sigma(w)) == tensor_pairing(slots, irr),
                            [&] { return w.key() + " k=" + std::to_string(k); });
            return;
          }
          for (int s = 1; s <= left - (k - static_cast<int>(tuple.size()) - 1); ++s)
            for (const auto& t : enumerate_trees(s)) {
              tuple.push_back(t);
              rec(left - s, tuple);
              tuple.pop_back();
            }
        };
        std::vector<RootedTree> tuple;
        rec(n, tuple);
      }

  for (int n = 3; n <= order; ++n) {
    std::vector<TensorPoly> reduced3;
    const auto ws = enumerate_trees(n);
    for (const auto& w : ws) reduced3.push_back(reduced_iterated_coproduct(ForestPoly(Forest{w}), 3));
    for (int sa = 1; sa <= n - 2; ++sa)
      for (int s1 = 1; s1 <= n - sa - 1; ++s1)
        for (const auto& alpha : enumerate_trees(sa))
          for (const auto& b1 : enumerate_forests(s1))
            for (const auto& b2 : enumerate_forests(n - sa - s1)) {
              TreeCombination nested;
              for (const auto& [t, c] : brace_direct(alpha, b1)) nested += c * brace_direct(t, b2);
              TensorPoly slots;
              slots.add({Forest{alpha}, b1, b2}, 1);
              for (std::size_t i = 0; i < ws.size(); ++i)
                brace_lemma.record(nested.coefficient(ws[i]) * Rational(sigma(ws[i])) ==
                                       tensor_pairing(slots, reduced3[i]),
                                   [&] { return alpha.key() + "{" + to_string(b1) + "}{" + to_string(b2) + "}"; });
            }
  }
  return {prelie_identity, braces, assoc, duality, iterated, brace_lemma};
}

inline std::vector<Check> run_forest(const Config& cfg) {
  std::vector<Check> out;
  const CoproductFlavor flavors[] = {CoproductFlavor::reduced, CoproductFlavor::full, CoproductFlavor::irr};
  const char* names[] = {"reduced", "full", "irr"};
  Check mutation{"forest", "dropping sym(F) is detected"};
  bool mutation_seen = false;
  {
    ForestEngine<CKBasis> engine{CKBasis{}};
    for (int f = 0; f < 3; ++f) {
      Check c{"forest", std::string("CK forest formula, ") + names[f]};
      for (const auto& t : enumerate_trees_up_to(cfg.tree_order))
        for (int k = 2; k <= cfg.max_k; ++k) {
          const auto direct = direct_iterated_coproduct(t, k, flavors[f], engine.basis());
          c.record(engine.formula(t, k, flavors[f]) == direct,
                   [&] { return t.key() + " k=" + std::to_string(k); });
          if (engine.formula(t, k, flavors[f], {false}) != direct) mutation_seen = true;
        }
      out.push_back(c);
    }
  }
  {
    ForestEngine<WordBasis> engine{WordBasis{cfg.alphabet}};
    for (int f = 0; f < 3; ++f) {
      Check c{"forest", std::string("word forest formula, ") + names[f]};
      for (const auto& w : enumerate_words_up_to(cfg.alphabet, cfg.word_length))
        for (int k = 2; k <= cfg.max_k; ++k)
          c.record(engine.formula(w, k, flavors[f]) == direct_iterated_coproduct(w, k, flavors[f], engine.basis()),
                   [&] { return w.letters() + " k=" + std::to_string(k); });
      out.push_back(c);
    }
  }
  mutation.record(mutation_seen, [] { return std::string("no instance distinguishes the mutant"); });
  out.push_back(mutation);
  return out;
}

inline std::vector<Check> run_magnus(const Config& cfg) {
  const int order = cfg.tree_order;
  Check three_way{"magnus", "fixed point, closed form and sol1 agree"};
  Check inverse{"magnus", "exp and Magnus are mutually inverse"};
  Check cm{"magnus", "|t|! times exp coefficient equals CM(t)"};
  const auto fixed = magnus_of_generator(order);
  const auto closed = magnus_closed_form(order);
  const auto via_sol1 = magnus_via_sol1(order);
  for (const auto& t : enumerate_trees_up_to(order))
    three_way.record(fixed.coefficient(t) == closed.coefficient(t) && closed.coefficient(t) == via_sol1.coefficient(t),
                     [&] { return t.key(); });
  three_way.record(fixed == closed && closed == via_sol1, [] { return std::string("extra terms"); });
  const int inv_order = std::min(order, 5);
  inverse.record(prelie_exp(magnus_of_generator(inv_order), inv_order) == generator_series(inv_order),
                 [] { return std::string("exp(Omega(.))"); });
  inverse.record(magnus_fixed_point(exp_of_generator(inv_order), inv_order) == generator_series(inv_order),
                 [] { return std::string("Omega(exp(.))"); });
  const auto e = exp_of_generator(order);
  for (const auto& t : enumerate_trees_up_to(order))
    cm.record(e.coefficient(t) * Rational(factorial(static_cast<unsigned long>(t.size()))) == cm_coefficient(t),
              [&] { return t.key(); });
  return {three_way, inverse, cm};
}

/// Every multiset of words with the given total length.
inline std::vector<WordMonomial> word_monomials(const std::string& alphabet, int total) {
  std::vector<WordMonomial> out;
  std::function<void(int, std::size_t, std::vector<Word>&)> rec;
  std::vector<Word> pool = enumerate_words_up_to(alphabet, total);
  rec = [&](int left, std::size_t from, std::vector<Word>& acc) {
    if (left == 0) {
      out.emplace_back(acc);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (pool[i].size() > left) continue;
      acc.push_back(pool[i]);
      rec(left - pool[i].size(), i, acc);
      acc.pop_back();
    }
  };
  std::vector<Word> acc;
  rec(total, 0, acc);
  return out;
}

/// <α{γ_1..γ_n}|w> = <α ⊗ γ_1⋯γ_n|δ_n(w)> for every α, γ's and w with |w| <= max_length.
inline Check word_duality(const std::string& alphabet, int max_length) {
  Check c{"words", "brace is dual to the coproduct"};
  for (int length = 1; length <= max_length; ++length) {
    std::vector<std::pair<Word, WordTensor>> targets;
    for (const auto& w : enumerate_words(alphabet, length)) targets.emplace_back(w, word_full_coproduct(w));
    for (int la = 1; la <= length; ++la)
      for (const auto& alpha : enumerate_words(alphabet, la))
        for (const auto& gammas : word_monomials(alphabet, length - la)) {
          const auto value = word_brace(alpha, gammas.factors());
          WordTensor probe;
          probe.add({WordMonomial{alpha}, gammas}, 1);
          for (const auto& [w, delta] : targets)
            c.record(value.coefficient(w) == word_tensor_pairing(probe, delta),
                     [&] { return alpha.letters() + "{" + to_string(gammas) + "} vs " + w.letters(); });
        }
  }
  return c;
}

inline std::vector<Check> run_words(const Config& cfg) {
  Check identity{"words", "insertion is right pre-Lie"};
  Check braces{"words", "closed-form brace equals Oudom-Guin recursion"};
  Check grading{"words", "reduced coproduct preserves length"};
  const auto small = enumerate_words_up_to(cfg.alphabet, 3);
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& c : small) {
        const WordCombination x(a), y(b), z(c);
        auto lhs = product<WordPreLie>(product<WordPreLie>(x, y), z) - product<WordPreLie>(x, word_prelie(b, c));
        auto rhs = product<WordPreLie>(product<WordPreLie>(x, z), y) - product<WordPreLie>(x, word_prelie(c, b));
        identity.record(lhs == rhs, [&] { return a.letters() + "," + b.letters() + "," + c.letters(); });
      }
  const auto args_pool = enumerate_words_up_to(cfg.alphabet, 2);
  for (const auto& alpha : enumerate_words_up_to(cfg.alphabet, 4))
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      while (true) {
        std::vector<Word> args;
        for (auto p : pick) args.push_back(args_pool[p]);
        braces.record(word_brace(alpha, args) == word_brace_recursive(alpha, args),
                      [&] { return alpha.letters() + " n=" + std::to_string(n); });
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] + 1 == args_pool.size()) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t q = pos; q < pick.size(); ++q) pick[q] = pick[pos - 1];
      }
    }
  for (const auto& w : enumerate_words_up_to(cfg.alphabet, cfg.word_length + 1))
    for (const auto& [slots, c] : word_dual_coproduct(w)) {
      int total = 0;
      for (const auto& m : slots)
        for (const auto& u : m) total += u.size();
      grading.record(total == w.size(), [&] { return w.letters(); });
    }
  return {identity, braces, grading, word_duality(cfg.alphabet, cfg.word_length)};
}

inline CumulantTable random_table(Brand brand, const std::string& variables, int maxlen, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  CumulantTable t(brand, variables, maxlen);
  for (const auto& w : t.words()) t.set(w, Rational(Integer(num(rng)), Integer(den(rng))));
  return t;
}

/// ⟨exp◁(α)|w⟩ and ⟨Ω(α)|w⟩ computed in the word pre-Lie algebra itself.
inline std::pair<WordSeries, WordSeries> word_series_exp_and_magnus(const CumulantTable& alpha) {
  WordCombination terms;
  for (const auto& [w, c] : alpha.values()) terms.add(w, c);
  const WordSeries a(terms, alpha.maxlen());
  return {prelie_exp(a, alpha.maxlen()), magnus_fixed_point(a, alpha.maxlen())};
}

inline std::vector<Check> run_cumulants(const Config& cfg) {
  Check round_trip{"cumulants", "moments -> brand -> moments is the identity"};
  Check triangle{"cumulants", "direct conversions equal the route through moments"};
  Check exp_theorem{"cumulants", "boolean = exp(monotone), free = -exp(-monotone)"};
  Check magnus_theorem{"cumulants", "monotone = Omega(boolean) = -Omega(-free)"};
  Check word_series{"cumulants", "NC_irr sums equal word pre-Lie exp and Magnus"};
  std::mt19937 rng(cfg.seed);
  const Brand brands[] = {Brand::moment, Brand::free, Brand::boolean, Brand::monotone};
  for (const std::string& vars : {std::string(1, cfg.alphabet.front()), cfg.alphabet}) {
    const auto moments = random_table(Brand::moment, vars, cfg.cumulant_length, rng);
    for (Brand b : brands) {
      round_trip.record(to_moments(from_moments(moments, b)) == moments, [&] { return to_string(b) + " " + vars; });
      const auto source = random_table(b, vars, cfg.cumulant_length, rng);
      for (Brand target : brands)
        triangle.record(convert(source, target, Route::direct) == convert(source, target, Route::via_moments),
                        [&] { return to_string(b) + "->" + to_string(target) + " " + vars; });
    }
    const auto rho = from_moments(moments, Brand::monotone);
    const auto beta = from_moments(moments, Brand::boolean);
    const auto nu = from_moments(moments, Brand::free);
    auto neg = [](const CumulantTable& t) { return [&t](const Word& u) { return -t.at(u); }; };
    for (const auto& w : moments.words()) {
      exp_theorem.record(exp_functional(rho, w) == beta.at(w) && -exp_functional(neg(rho), w) == nu.at(w),
                         [&] { return w.letters(); });
      magnus_theorem.record(magnus_functional(beta, w) == rho.at(w) && -magnus_functional(neg(nu), w) == rho.at(w),
                            [&] { return w.letters(); });
    }
    const int series_len = std::min(cfg.cumulant_length, 5);
    const auto alpha = random_table(Brand::monotone, vars, series_len, rng);
    const auto [e, m] = word_series_exp_and_magnus(alpha);
    for (const auto& w : alpha.words())
      word_series.record(e.coefficient(w) == exp_functional(alpha, w) && m.coefficient(w) == magnus_functional(alpha, w),
                         [&] { return w.letters(); });
  }
  return {round_trip, triangle, exp_theorem, magnus_theorem, word_series};
}

inline std::vector<Check> run_suite(const std::string& name, const Config& cfg) {
  if (name == "trees") return run_trees(cfg);
  if (name == "hopf") return run_hopf(cfg);
  if (name == "forest") return run_forest(cfg);
  if (name == "magnus") return run_magnus(cfg);
  if (name == "words") return run_words(cfg);
  if (name == "cumulants") return run_cumulants(cfg);
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown verify suite '" + name + "'");
}

inline io::json report_json(const std::vector<Check>& checks) {
  io::json list = io::json::array();
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed();
    io::json entry = {{"suite", c.suite}, {"identity", c.name}, {"instances", c.instances},
                      {"failures", c.failures}, {"passed", c.passed()}};
    if (!c.first_failure.empty()) entry["first_failure"] = c.first_failure;
    list.push_back(entry);
  }
  return {{"passed", ok}, {"checks", list}};
}

}  // namespace prelie::verify
