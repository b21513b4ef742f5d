#pragma once

// The free pre-Lie algebra on one generator (rooted trees under grafting),
// its enveloping algebra with the Grossman-Larson product, the dual
// Connes-Kreimer Hopf algebra with the symmetry-factor pairing, and the
// series operators exp◁, Ω (three ways) and sol1.

#include <prelie/exactnum.hpp>
#include <prelie/hopf.hpp>
#include <prelie/linear.hpp>
#include <prelie/prelie.hpp>
#include <prelie/trees.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prelie {

using TreeCombination = LinearCombination<RootedTree>;
using ForestPoly = Polynomial<RootedTree>;
using TensorPoly = Tensor<RootedTree>;

/// t ◁ u: sum over vertices v of t of the tree with u's root attached as a
/// new child of v.
inline TreeCombination graft(const RootedTree& t, const RootedTree& u) {
  static detail::KeyedMemo<TreeCombination> memo;
  return memo.get(t.key() + "|" + u.key(), [&] {
    TreeCombination out;
    const auto& kids = t.children();
    std::vector<RootedTree> with_u = kids;
    with_u.push_back(u);
    out.add(RootedTree::with_children(with_u), 1);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (const auto& [s, c] : graft(kids[i], u)) {
        std::vector<RootedTree> replaced = kids;
        replaced[i] = s;
        out.add(RootedTree::with_children(std::move(replaced)), c);
      }
    }
    return out;
  });
}

struct TreePreLie {
  using basis_type = RootedTree;
  static int grade(const RootedTree& t) { return t.size(); }
  static TreeCombination product(const RootedTree& t, const RootedTree& u) { return graft(t, u); }
};

using TreeSeries = Series<TreePreLie>;

inline TreeSeries graft_series(const TreeSeries& a, const TreeSeries& b) { return product(a, b); }

/// t{args} by the Oudom-Guin recursion on grafting.
inline TreeCombination brace(const RootedTree& t, const Forest& args) {
  return oudom_guin_brace<TreePreLie>(t, args.factors());
}

/// t{args} as the sum over all maps from the (position-labelled) arguments to
/// vertices of t, grafting every argument at its image simultaneously.
inline TreeCombination brace_direct(const RootedTree& t, const std::vector<RootedTree>& args) {
  if (args.empty()) return TreeCombination(t);
  const auto& kids = t.children();
  const std::size_t targets = kids.size() + 1;
  TreeCombination out;
  std::vector<std::size_t> choice(args.size(), 0);
  while (true) {
    std::vector<RootedTree> at_root;
    std::vector<std::vector<RootedTree>> at_child(kids.size());
    for (std::size_t a = 0; a < args.size(); ++a) {
      if (choice[a] == 0)
        at_root.push_back(args[a]);
      else
        at_child[choice[a] - 1].push_back(args[a]);
    }
    std::vector<std::pair<std::vector<RootedTree>, Rational>> partial{{at_root, Rational(1)}};
    for (std::size_t j = 0; j < kids.size(); ++j) {
      auto options = brace_direct(kids[j], at_child[j]);
      std::vector<std::pair<std::vector<RootedTree>, Rational>> grown;
      for (const auto& [prefix, c] : partial)
        for (const auto& [s, d] : options) {
          auto next = prefix;
          next.push_back(s);
          grown.emplace_back(std::move(next), c * d);
        }
      partial = std::move(grown);
    }
    for (auto& [children, c] : partial) out.add(RootedTree::with_children(std::move(children)), c);

    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == targets) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return out;
}

inline TreeCombination brace_direct(const RootedTree& t, const Forest& args) {
  return brace_direct(t, args.factors());
}

inline ForestPoly as_forest_poly(const TreeCombination& x) {
  ForestPoly out;
  for (const auto& [t, c] : x) out.add(Forest{t}, c);
  return out;
}

inline ForestPoly as_forest_poly(const TreeSeries& x) { return as_forest_poly(x.terms()); }

/// Single-tree component of a forest polynomial.
inline TreeCombination single_tree_part(const ForestPoly& x) {
  TreeCombination out;
  for (const auto& [f, c] : x)
    if (f.degree() == 1) out.add(f.factors().front(), c);
  return out;
}

/// Commutative (juxtaposition) product, dropping terms above `order`.
inline ForestPoly poly_multiply(const ForestPoly& x, const ForestPoly& y, int order = kUnbounded) {
  ForestPoly out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      if (order != kUnbounded && vertex_count(a) + vertex_count(b) > order) continue;
      out.add(a * b, ca * cb);
    }
  return out;
}

/// Grossman-Larson product of two forests: sum over maps f from the factors
/// of b to {0,..,l} of B_0 · a_1{B_1} ⋯ a_l{B_l}.
inline ForestPoly gl_product(const Forest& a, const Forest& b) {
  static detail::KeyedMemo<ForestPoly> memo;
  return memo.get(to_string(a) + "|" + to_string(b), [&] {
    const auto& as = a.factors();
    const auto& bs = b.factors();
    const std::size_t targets = as.size() + 1;
    ForestPoly out;
    std::vector<std::size_t> choice(bs.size(), 0);
    while (true) {
      std::vector<RootedTree> b0;
      std::vector<std::vector<RootedTree>> blocks(as.size());
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (choice[j] == 0)
          b0.push_back(bs[j]);
        else
          blocks[choice[j] - 1].push_back(bs[j]);
      }
      ForestPoly term(Forest(std::move(b0)));
      for (std::size_t i = 0; i < as.size(); ++i) term = poly_multiply(term, as_forest_poly(brace_direct(as[i], blocks[i])));
      out += term;

      std::size_t pos = 0;
      while (pos < choice.size() && ++choice[pos] == targets) choice[pos++] = 0;
      if (pos == choice.size()) break;
    }
    return out;
  });
}

inline ForestPoly gl_product(const ForestPoly& x, const ForestPoly& y) {
  ForestPoly out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      auto p = gl_product(a, b);
      p *= ca * cb;
      out += p;
    }
  return out;
}

/// Every admissible cut of t, the empty one included, as (trunk, pruning);
/// the coefficient counts the cuts producing that pair.
inline LinearCombination<std::pair<RootedTree, Forest>> admissible_cuts(const RootedTree& t) {
  static detail::KeyedMemo<LinearCombination<std::pair<RootedTree, Forest>>> memo;
  return memo.get(t.key(), [&] {
    struct Partial {
      std::vector<RootedTree> trunk_children;
      Forest pruning;
      Rational count;
    };
    std::vector<Partial> partial{{{}, Forest(), Rational(1)}};
    for (const auto& child : t.children()) {
      std::vector<Partial> grown;
      for (const auto& p : partial) {
        grown.push_back({p.trunk_children, p.pruning * Forest{child}, p.count});
        for (const auto& [cut, c] : admissible_cuts(child)) {
          auto kids = p.trunk_children;
          kids.push_back(cut.first);
          grown.push_back({std::move(kids), p.pruning * cut.second, p.count * c});
        }
      }
      partial = std::move(grown);
    }
    LinearCombination<std::pair<RootedTree, Forest>> out;
    for (auto& p : partial) out.add({RootedTree::with_children(std::move(p.trunk_children)), p.pruning}, p.count);
    return out;
  });
}

/// The Connes-Kreimer Hopf algebra: δ̄(t) = sum over non-empty admissible
/// cuts of trunk ⊗ pruning.
inline const MonomialHopf<RootedTree>& ck_hopf() {
  static const MonomialHopf<RootedTree> hopf([](const RootedTree& t) {
    TensorPoly out;
    for (const auto& [cut, c] : admissible_cuts(t))
      if (!cut.second.is_unit()) out.add({Forest{cut.first}, cut.second}, c);
    return out;
  });
  return hopf;
}

inline TensorPoly ck_coproduct(const ForestPoly& x) { return ck_hopf().coproduct(x); }
inline TensorPoly ck_coproduct(const RootedTree& t) { return ck_hopf().coproduct(t); }

inline TensorPoly iterated_coproduct(const ForestPoly& x, int k) { return ck_hopf().iterated(x, k); }
inline TensorPoly reduced_iterated_coproduct(const ForestPoly& x, int k) { return ck_hopf().reduced_iterated(x, k); }
inline TensorPoly irr_iterated_coproduct(const RootedTree& t, int k) {
  return ck_hopf().irr_iterated(ForestPoly(Forest{t}), k);
}

inline Integer tree_norm(const RootedTree& t) { return sigma(t); }

/// <f|g> = σ(B+(f)) when f ≅ g, else 0; bilinear.
inline Rational pairing(const ForestPoly& a, const ForestPoly& b) { return polynomial_pairing(a, b, tree_norm); }
inline Rational pairing(const Forest& a, const Forest& b) { return monomial_pairing(a, b, tree_norm); }
inline Rational tensor_pairing(const TensorPoly& a, const TensorPoly& b) { return tensor_pairing(a, b, tree_norm); }

/// CM(t) = |t|! / (σ(t) t!).
inline Rational cm_coefficient(const RootedTree& t) {
  return Rational(factorial(static_cast<unsigned long>(t.size())), Integer(sigma(t) * tree_factorial(t)));
}

inline TreeSeries generator_series(int order) { return TreeSeries::generator(RootedTree(), order); }

/// sum over trees with at most `order` vertices of (ω(t)/σ(t)) t.
inline TreeSeries magnus_closed_form(int order) {
  TreeCombination out;
  for (const auto& t : enumerate_trees_up_to(order)) out.add(t, murua_omega(t) / Rational(sigma(t)));
  return TreeSeries(out, order);
}

/// sum over trees with at most `order` vertices of (CM(t)/|t|!) t = t/(σ(t) t!).
inline TreeSeries exp_closed_form(int order) {
  TreeCombination out;
  for (const auto& t : enumerate_trees_up_to(order)) out.add(t, Rational(1) / Rational(Integer(sigma(t) * tree_factorial(t))));
  return TreeSeries(out, order);
}

/// Polynomial exponential sum_{n>=0} a^n / n!, truncated by total vertex count.
inline ForestPoly poly_exp(const TreeSeries& a, int order) {
  if (order < 0) throw std::domain_error("poly_exp: negative order");
  const ForestPoly base = as_forest_poly(a.terms());
  ForestPoly total(Forest(), 1);
  ForestPoly power(Forest(), 1);
  for (int n = 1; n <= order; ++n) {
    power = poly_multiply(power, base, order);
    if (power.empty()) break;
    auto term = power;
    term *= Rational(Integer(1), factorial(static_cast<unsigned long>(n)));
    total += term;
  }
  return total;
}

namespace detail {

/// Sum over ordered partitions of the factors of m into j blocks of
/// b_{I1} ∗ ⋯ ∗ b_{Ij}; depends only on the multiset m.
inline ForestPoly ordered_partition_products(const Forest& m, int j, std::map<std::pair<Forest, int>, ForestPoly>& memo) {
  if (j == 1) return ForestPoly(m);
  auto key = std::make_pair(m, j);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const auto& fs = m.factors();
  const std::size_t n = fs.size();
  ForestPoly out;
  if (static_cast<std::size_t>(j) <= n) {
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
      std::vector<RootedTree> first;
      std::vector<RootedTree> rest;
      for (std::size_t b = 0; b < n; ++b) (mask & (std::size_t{1} << b) ? first : rest).push_back(fs[b]);
      if (rest.size() < static_cast<std::size_t>(j - 1)) continue;
      out += gl_product(ForestPoly(Forest(std::move(first))),
                        ordered_partition_products(Forest(std::move(rest)), j - 1, memo));
    }
  }
  memo.emplace(key, out);
  return out;
}

}  // namespace detail

/// sol1(b_1⋯b_n) = sum_k ((-1)^{k-1}/k) sum over ordered partitions into k
/// blocks of b_{I1} ∗ ⋯ ∗ b_{Ik}; linear; sol1(1) = 0.
inline ForestPoly sol1(const ForestPoly& x) {
  ForestPoly out;
  std::map<std::pair<Forest, int>, ForestPoly> memo;
  for (const auto& [m, c] : x) {
    const int n = static_cast<int>(m.degree());
    for (int k = 1; k <= n; ++k) {
      auto term = detail::ordered_partition_products(m, k, memo);
      term *= c * Rational(Integer(k % 2 == 1 ? 1 : -1), Integer(k));
      out += term;
    }
  }
  return out;
}

/// Ω(•) as the single-tree part of sol1(exp(•)).
inline TreeSeries magnus_via_sol1(int order) {
  return TreeSeries(single_tree_part(sol1(poly_exp(generator_series(order), order))), order);
}

inline TreeSeries exp_of_generator(int order) { return prelie_exp(generator_series(order), order); }
inline TreeSeries magnus_of_generator(int order) { return magnus_fixed_point(generator_series(order), order); }

}  // namespace prelie
