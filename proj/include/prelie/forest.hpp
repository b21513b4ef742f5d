#pragma once

// Forest formulas for iterated coproducts over any connected graded basis
// whose reduced coproduct δ̄(b_i) = Σ λ^{i;i0}_I b_{i0} ⊗ b_I is known.
//
// A decorated tree associated to index i has its root decorated (i; i0); an
// internal vertex decorated (d1; d2) has children whose first decorations
// form a multiset I with λ^{d1;d2}_I != 0; leaves carry a single index d.
// Every vertex consumes at least one unit of grade, so a tree associated to
// i has at most grade(i) vertices.

#include <prelie/exactnum.hpp>
#include <prelie/freeprelie.hpp>
#include <prelie/hopf.hpp>
#include <prelie/linear.hpp>
#include <prelie/trees.hpp>
#include <prelie/words.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prelie {

/// (i0, I) -> λ^{i;i0}_I for one index i.
template <class Index>
using StructureConstants = LinearCombination<std::pair<Index, Monomial<Index>>>;

template <class B>
concept BasisProvider = requires(const B& b, const typename B::index_type& i) {
  { b.grade(i) } -> std::convertible_to<int>;
  { b.contains(i) } -> std::convertible_to<bool>;
  { b.structure(i) } -> std::same_as<StructureConstants<typename B::index_type>>;
  { b.label(i) } -> std::convertible_to<std::string>;
};

namespace detail {

template <class Index>
StructureConstants<Index> structure_from_tensor(const Tensor<Index>& reduced) {
  StructureConstants<Index> out;
  for (const auto& [slots, c] : reduced) {
    if (slots.size() != 2 || slots[0].degree() != 1 || slots[1].is_unit())
      throw std::logic_error("reduced coproduct term is not of the form b_i0 ⊗ b_I");
    out.add({slots[0].factors().front(), slots[1]}, c);
  }
  return out;
}

}  // namespace detail

/// Rooted trees with the Connes-Kreimer reduced coproduct.
struct CKBasis {
  using index_type = RootedTree;
  int grade(const RootedTree& t) const { return t.size(); }
  bool contains(const RootedTree&) const { return true; }
  StructureConstants<RootedTree> structure(const RootedTree& t) const {
    return detail::structure_from_tensor(ck_hopf().reduced_coproduct(t));
  }
  std::string label(const RootedTree& t) const { return t.key(); }
  const MonomialHopf<RootedTree>& hopf() const { return ck_hopf(); }
};

/// Words over a fixed alphabet with δ̄ from odd factorizations.
struct WordBasis {
  using index_type = Word;
  std::string alphabet;

  int grade(const Word& w) const { return w.size(); }
  bool contains(const Word& w) const { return w.letters().find_first_not_of(alphabet) == std::string::npos; }
  StructureConstants<Word> structure(const Word& w) const {
    return detail::structure_from_tensor(word_hopf().reduced_coproduct(w));
  }
  std::string label(const Word& w) const { return w.letters(); }
  const MonomialHopf<Word>& hopf() const { return word_hopf(); }
};

template <class Index>
class DecoratedTree {
 public:
  static DecoratedTree leaf(Index d, std::string label) {
    DecoratedTree t(d, d);
    t.key_ = "(" + label + ")";
    return t;
  }

  /// Internal vertex decorated (d1; d2) over a non-empty child multiset.
  static DecoratedTree node(Index d1, Index d2, const std::string& label1, const std::string& label2,
                            std::vector<DecoratedTree> children) {
    if (children.empty()) throw std::domain_error("DecoratedTree: an internal vertex needs children");
    std::sort(children.begin(), children.end());
    DecoratedTree t(std::move(d1), std::move(d2));
    t.key_ = "(" + label1 + ";" + label2 + ")[";
    for (const auto& c : children) {
      t.size_ += c.size_;
      t.key_ += c.key_;
    }
    t.key_ += "]";
    t.children_ = std::move(children);
    return t;
  }

  const Index& first() const { return first_; }
  const Index& second() const { return second_; }
  const std::vector<DecoratedTree>& children() const { return children_; }
  bool is_leaf() const { return children_.empty(); }
  int size() const { return size_; }
  const std::string& key() const { return key_; }

  friend bool operator==(const DecoratedTree& a, const DecoratedTree& b) { return a.key_ == b.key_; }
  friend bool operator<(const DecoratedTree& a, const DecoratedTree& b) { return a.key_ < b.key_; }

 private:
  DecoratedTree(Index d1, Index d2) : first_(std::move(d1)), second_(std::move(d2)) {}

  Index first_;
  Index second_;
  std::vector<DecoratedTree> children_;
  int size_ = 1;
  std::string key_;
};

/// Product over classes of trees sharing a root index of the multinomial of
/// the multiplicities of the distinct trees in the class.
template <class Index>
Integer sym(const std::vector<DecoratedTree<Index>>& forest) {
  std::map<Index, std::map<std::string, unsigned long>> classes;
  for (const auto& t : forest) ++classes[t.first()][t.key()];
  Integer r = 1;
  for (const auto& [index, counts] : classes) {
    std::vector<unsigned long> parts;
    for (const auto& [key, m] : counts) parts.push_back(m);
    r *= multinomial(parts);
  }
  return r;
}

struct ForestOptions {
  /// Dropping the sym(F) factor reproduces the uncorrected formula.
  bool include_symmetry = true;
};

template <BasisProvider Basis>
Rational lambda_coeff(const DecoratedTree<typename Basis::index_type>& t, const Basis& basis,
                      ForestOptions options = {}) {
  if (!basis.contains(t.first()) || !basis.contains(t.second()))
    throw std::domain_error("decoration '" + basis.label(t.first()) + "' is not a basis index");
  if (t.is_leaf()) return 1;
  std::vector<typename Basis::index_type> roots;
  for (const auto& c : t.children()) roots.push_back(c.first());
  Rational r = basis.structure(t.first()).coefficient({t.second(), Monomial<typename Basis::index_type>(roots)});
  if (options.include_symmetry) r *= Rational(sym(t.children()));
  for (const auto& c : t.children()) {
    if (r.is_zero()) break;
    r *= lambda_coeff(c, basis, options);
  }
  return r;
}

template <class Index>
struct DecoratedTerm {
  DecoratedTree<Index> tree;
  Rational lambda;
};

/// One (T, f) summand: λ(T) and the slot monomials C(f).
template <class Index>
struct ForestTerm {
  DecoratedTree<Index> tree;
  Rational lambda;
  std::vector<Monomial<Index>> slots;
};

template <BasisProvider Basis>
class ForestEngine {
 public:
  using index_type = typename Basis::index_type;
  using tree_type = DecoratedTree<index_type>;

  explicit ForestEngine(Basis basis) : basis_(std::move(basis)), cache_(std::make_shared<Cache>()) {}

  const Basis& basis() const { return basis_; }

  /// Every decorated tree associated to i with non-zero λ, each once.
  std::vector<DecoratedTerm<index_type>> decorated_trees(const index_type& i) const {
    if (!basis_.contains(i)) throw std::domain_error("'" + basis_.label(i) + "' is not a basis index");
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->trees.find(i);
      if (it != cache_->trees.end()) return it->second;
    }
    std::vector<DecoratedTerm<index_type>> out{{tree_type::leaf(i, basis_.label(i)), Rational(1)}};
    for (const auto& [term, coeff] : basis_.structure(i)) {
      const auto& [trunk, pieces] = term;
      // children: for each distinct index in I with multiplicity m, a multiset
      // of m trees associated to that index
      std::vector<std::vector<tree_type>> partial{{}};
      for (const auto& [j, m] : pieces.multiplicities()) {
        const auto options = decorated_trees(j);
        std::vector<std::vector<tree_type>> grown;
        std::vector<std::size_t> pick(m, 0);
        while (true) {
          for (const auto& prefix : partial) {
            auto next = prefix;
            for (auto p : pick) next.push_back(options[p].tree);
            grown.push_back(std::move(next));
          }
          // next non-decreasing pick sequence
          std::size_t pos = m;
          while (pos > 0 && pick[pos - 1] + 1 == options.size()) --pos;
          if (pos == 0) break;
          ++pick[pos - 1];
          for (std::size_t q = pos; q < m; ++q) pick[q] = pick[pos - 1];
        }
        partial = std::move(grown);
      }
      for (auto& children : partial) {
        auto t = tree_type::node(i, trunk, basis_.label(i), basis_.label(trunk), std::move(children));
        Rational lambda = lambda_coeff(t, basis_);
        if (!lambda.is_zero()) out.push_back({std::move(t), lambda});
      }
    }
    std::unique_lock lock(cache_->mutex);
    cache_->trees.try_emplace(i, out);
    return out;
  }

  /// Every (T, f) with f a k-linearization (reduced), weak k-linearization
  /// (full) or bijective linearization (irr) of T, strictly increasing from
  /// parent to child.
  std::vector<ForestTerm<index_type>> terms(const index_type& i, int k, CoproductFlavor flavor,
                                            ForestOptions options = {}) const {
    if (k < 1) throw std::domain_error("forest formula: k must be at least 1");
    std::vector<ForestTerm<index_type>> out;
    for (const auto& [tree, base_lambda] : decorated_trees(i)) {
      const Rational lambda = options.include_symmetry ? base_lambda : lambda_coeff(tree, basis_, options);
      if (lambda.is_zero()) continue;
      if (flavor == CoproductFlavor::irr && tree.size() != k) continue;
      if (flavor == CoproductFlavor::reduced && tree.size() < k) continue;
      std::vector<int> parent;
      std::vector<index_type> label;
      flatten(tree, -1, parent, label);
      std::vector<int> value(parent.size(), 0);
      assign(0, k, flavor, parent, label, value, tree, lambda, out);
    }
    return out;
  }

  Tensor<index_type> formula(const index_type& i, int k, CoproductFlavor flavor, ForestOptions options = {}) const {
    Tensor<index_type> out;
    for (const auto& term : terms(i, k, flavor, options)) out.add(term.slots, term.lambda);
    return out;
  }

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<index_type, std::vector<DecoratedTerm<index_type>>> trees;
  };

  static void flatten(const tree_type& t, int parent_id, std::vector<int>& parent, std::vector<index_type>& label) {
    const int id = static_cast<int>(parent.size());
    parent.push_back(parent_id);
    label.push_back(t.second());
    for (const auto& c : t.children()) flatten(c, id, parent, label);
  }

  // Vertices are in preorder, so a parent's value is fixed before its children.
  static void assign(std::size_t v, int k, CoproductFlavor flavor, const std::vector<int>& parent,
                     const std::vector<index_type>& label, std::vector<int>& value, const tree_type& tree,
                     const Rational& lambda, std::vector<ForestTerm<index_type>>& out) {
    if (v == parent.size()) {
      std::vector<std::vector<index_type>> fibers(static_cast<std::size_t>(k));
      for (std::size_t x = 0; x < value.size(); ++x) fibers[static_cast<std::size_t>(value[x] - 1)].push_back(label[x]);
      if (flavor != CoproductFlavor::full)
        for (const auto& f : fibers)
          if (f.empty()) return;
      if (flavor == CoproductFlavor::irr)
        for (const auto& f : fibers)
          if (f.size() != 1) return;
      std::vector<Monomial<index_type>> slots;
      slots.reserve(fibers.size());
      for (auto& f : fibers) slots.emplace_back(std::move(f));
      out.push_back({tree, lambda, std::move(slots)});
      return;
    }
    const int low = parent[v] < 0 ? 1 : value[static_cast<std::size_t>(parent[v])] + 1;
    for (int x = low; x <= k; ++x) {
      value[v] = x;
      assign(v + 1, k, flavor, parent, label, value, tree, lambda, out);
    }
  }

  Basis basis_;
  std::shared_ptr<Cache> cache_;
};

template <BasisProvider Basis>
std::vector<DecoratedTerm<typename Basis::index_type>> enumerate_decorated_trees(const typename Basis::index_type& i,
                                                                                 const Basis& basis) {
  return ForestEngine<Basis>(basis).decorated_trees(i);
}

template <BasisProvider Basis>
Tensor<typename Basis::index_type> forest_formula(const typename Basis::index_type& i, int k, CoproductFlavor flavor,
                                                  const Basis& basis, ForestOptions options = {}) {
  return ForestEngine<Basis>(basis).formula(i, k, flavor, options);
}

/// The directly iterated coproduct the forest formula is checked against.
template <BasisProvider Basis>
Tensor<typename Basis::index_type> direct_iterated_coproduct(const typename Basis::index_type& i, int k,
                                                              CoproductFlavor flavor, const Basis& basis) {
  using Index = typename Basis::index_type;
  return basis.hopf().iterated(Polynomial<Index>(Monomial<Index>{i}), k, flavor);
}

}  // namespace prelie
