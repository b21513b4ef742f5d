#pragma once

// Non-planar rooted trees and forests: canonical forms, enumeration and the
// scalar statistics used throughout (symmetry factor, tree factorial,
// k-linearization counts, Murua coefficients).
//
// Canonical encoding: a tree is "[" followed by the encodings of its children
// and "]", e.g. "[]" is the single vertex, "[[]]" the 2-chain and "[[][]]" the
// cherry. Children are sorted by the tree order: fewer vertices first, then
// lexicographic on the encoding ('[' < ']'). A forest is the juxtaposition of
// its trees in the same order; the empty forest prints as "1".

#include <prelie/exactnum.hpp>
#include <prelie/linear.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prelie {

class RootedTree {
 public:
  /// The single-vertex tree.
  RootedTree() : node_(leaf_node()) {}

  /// Root with the given children, in any order.
  static RootedTree with_children(std::vector<RootedTree> children) {
    if (children.empty()) return RootedTree();
    std::sort(children.begin(), children.end());
    auto node = std::make_shared<Node>();
    node->size = 1;
    node->key = "[";
    for (const auto& c : children) {
      node->size += c.size();
      node->key += c.key();
    }
    node->key += "]";
    node->children = std::move(children);
    return RootedTree(std::move(node));
  }

  const std::vector<RootedTree>& children() const { return node_->children; }
  int size() const { return node_->size; }
  bool is_leaf() const { return node_->children.empty(); }
  const std::string& key() const { return node_->key; }

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.node_ == b.node_ || a.node_->key == b.node_->key;
  }
  friend bool operator!=(const RootedTree& a, const RootedTree& b) { return !(a == b); }
  friend bool operator<(const RootedTree& a, const RootedTree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.key() < b.key();
  }

 private:
  struct Node {
    std::vector<RootedTree> children;
    int size = 1;
    std::string key = "[]";
  };

  explicit RootedTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> leaf_node() {
    static const auto leaf = std::make_shared<const Node>();
    return leaf;
  }

  std::shared_ptr<const Node> node_;
};

using Forest = Monomial<RootedTree>;

inline int grade(const RootedTree& t) { return t.size(); }

inline int vertex_count(const Forest& f) {
  int n = 0;
  for (const auto& t : f) n += t.size();
  return n;
}

inline int grade(const Forest& f) { return vertex_count(f); }

inline std::string to_string(const RootedTree& t) { return t.key(); }
inline std::ostream& operator<<(std::ostream& os, const RootedTree& t) { return os << t.key(); }

inline std::string to_string(const Forest& f) {
  if (f.is_unit()) return "1";
  std::string s;
  for (const auto& t : f) s += t.key();
  return s;
}

inline RootedTree b_plus(const Forest& f) { return RootedTree::with_children(f.factors()); }

inline Forest b_minus(const RootedTree& t) { return Forest(t.children()); }

inline RootedTree chain(int n) {
  if (n < 1) throw std::domain_error("chain: n must be positive");
  RootedTree t;
  for (int i = 1; i < n; ++i) t = RootedTree::with_children({t});
  return t;
}

namespace detail {

inline RootedTree parse_tree_at(std::string_view s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '[')
    throw std::invalid_argument("tree syntax: expected '[' at offset " + std::to_string(pos));
  ++pos;
  std::vector<RootedTree> children;
  while (pos < s.size() && s[pos] == '[') children.push_back(parse_tree_at(s, pos));
  if (pos >= s.size() || s[pos] != ']')
    throw std::invalid_argument("tree syntax: expected ']' at offset " + std::to_string(pos));
  ++pos;
  return RootedTree::with_children(std::move(children));
}

}  // namespace detail

/// Parses one bracket-encoded tree; children may appear in any order.
inline RootedTree parse_tree(std::string_view s) {
  std::size_t pos = 0;
  auto t = detail::parse_tree_at(s, pos);
  if (pos != s.size()) throw std::invalid_argument("tree syntax: trailing characters in '" + std::string(s) + "'");
  return t;
}

/// Parses juxtaposed trees; "" and "1" denote the empty forest.
inline Forest parse_forest(std::string_view s) {
  if (s.empty() || s == "1") return Forest();
  std::vector<RootedTree> trees;
  std::size_t pos = 0;
  while (pos < s.size()) trees.push_back(detail::parse_tree_at(s, pos));
  return Forest(std::move(trees));
}

namespace detail {

/// Per-process memo keyed by canonical encoding. Values are computed outside
/// the lock so recursive lookups cannot deadlock.
template <class V>
class KeyedMemo {
 public:
  template <class F>
  V get(const std::string& key, F&& compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    V value = compute();
    std::unique_lock lock(mutex_);
    table_.try_emplace(key, value);
    return value;
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<std::string, V> table_;
};

/// All multisets of trees with total vertex count `total`, each tree no
/// smaller (in tree order) than trees[min_index].
inline void forests_of_size(int total, const std::vector<std::vector<RootedTree>>& by_size, int min_size,
                            std::size_t min_index, std::vector<RootedTree>& current,
                            std::vector<std::vector<RootedTree>>& out) {
  if (total == 0) {
    out.push_back(current);
    return;
  }
  for (int s = min_size; s <= total; ++s) {
    const auto& bucket = by_size[s];
    for (std::size_t i = (s == min_size ? min_index : 0); i < bucket.size(); ++i) {
      current.push_back(bucket[i]);
      forests_of_size(total - s, by_size, s, i, current, out);
      current.pop_back();
    }
  }
}

}  // namespace detail

/// All isomorphism classes of rooted trees with n vertices, ascending in tree
/// order. Memoized.
inline std::vector<RootedTree> enumerate_trees(int n) {
  if (n < 1) throw std::domain_error("enumerate_trees: n must be at least 1");
  static std::mutex mutex;
  static std::vector<std::vector<RootedTree>> by_size{{}, {RootedTree()}};
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(by_size.size()) <= n) {
    const int m = static_cast<int>(by_size.size());
    std::vector<std::vector<RootedTree>> forests;
    std::vector<RootedTree> current;
    detail::forests_of_size(m - 1, by_size, 1, 0, current, forests);
    std::vector<RootedTree> trees;
    trees.reserve(forests.size());
    for (auto& f : forests) trees.push_back(RootedTree::with_children(std::move(f)));
    std::sort(trees.begin(), trees.end());
    by_size.push_back(std::move(trees));
  }
  return by_size[n];
}

/// All trees with 1..max_size vertices, in tree order.
inline std::vector<RootedTree> enumerate_trees_up_to(int max_size) {
  std::vector<RootedTree> out;
  for (int n = 1; n <= max_size; ++n) {
    auto level = enumerate_trees(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// All forests with exactly n vertices (n = 0 gives the empty forest), in
/// monomial order.
inline std::vector<Forest> enumerate_forests(int n) {
  if (n < 0) throw std::domain_error("enumerate_forests: n must be non-negative");
  std::vector<std::vector<RootedTree>> by_size{{}};
  for (int m = 1; m <= n; ++m) by_size.push_back(enumerate_trees(m));
  std::vector<std::vector<RootedTree>> raw;
  std::vector<RootedTree> current;
  detail::forests_of_size(n, by_size, 1, 0, current, raw);
  std::vector<Forest> out;
  out.reserve(raw.size());
  for (auto& f : raw) out.emplace_back(std::move(f));
  std::sort(out.begin(), out.end());
  return out;
}

/// Order of the automorphism group: prod over distinct child shapes of
/// m_i! * sigma(t_i)^{m_i}.
inline Integer sigma(const RootedTree& t) {
  static detail::KeyedMemo<Integer> memo;
  if (t.is_leaf()) return 1;
  return memo.get(t.key(), [&] {
    Integer r = 1;
    for (const auto& [child, m] : b_minus(t).multiplicities()) {
      r *= factorial(m);
      Integer s = sigma(child);
      for (unsigned long i = 0; i < m; ++i) r *= s;
    }
    return r;
  });
}

/// sigma(B+(f)): the symmetry factor of a forest.
inline Integer sigma(const Forest& f) { return sigma(b_plus(f)); }

inline Integer tree_factorial(const RootedTree& t) {
  static detail::KeyedMemo<Integer> memo;
  if (t.is_leaf()) return 1;
  return memo.get(t.key(), [&] {
    Integer r = t.size();
    for (const auto& c : t.children()) r *= tree_factorial(c);
    return r;
  });
}

inline Integer forest_factorial(const Forest& f) {
  Integer r = 1;
  for (const auto& t : f) r *= tree_factorial(t);
  return r;
}

/// m(t) = |t|! / t!, the number of linear extensions.
inline Integer num_linearizations(const RootedTree& t) {
  return Integer(factorial(static_cast<unsigned long>(t.size())) / tree_factorial(t));
}

namespace detail {

/// weak[k] = number of strictly order-preserving maps t -> [k], k = 0..max_k.
/// The root is minimal: a child gets a strictly larger value than its parent.
inline std::vector<Integer> weak_linearization_table(const RootedTree& t, int max_k) {
  std::vector<std::vector<Integer>> child_tables;
  child_tables.reserve(t.children().size());
  for (const auto& c : t.children()) child_tables.push_back(weak_linearization_table(c, max_k));
  std::vector<Integer> table(static_cast<std::size_t>(max_k) + 1, 0);
  for (int k = 1; k <= max_k; ++k) {
    Integer total = 0;
    for (int v = 1; v <= k; ++v) {
      Integer prod = 1;
      for (const auto& ct : child_tables) prod *= ct[static_cast<std::size_t>(k - v)];
      total += prod;
    }
    table[static_cast<std::size_t>(k)] = total;
  }
  return table;
}

inline std::vector<Integer> weak_linearization_table(const Forest& f, int max_k) {
  std::vector<Integer> table(static_cast<std::size_t>(max_k) + 1, 1);
  for (const auto& t : f) {
    auto tt = weak_linearization_table(t, max_k);
    for (std::size_t k = 0; k < table.size(); ++k) table[k] *= tt[k];
  }
  return table;
}

template <class Poset>
Integer surjective_count(const Poset& p, int k) {
  if (k < 1) throw std::domain_error("k-linearization: k must be at least 1");
  auto weak = weak_linearization_table(p, k);
  Integer total = 0;
  for (int l = 0; l <= k; ++l) {
    Integer term = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(l)) *
                   weak[static_cast<std::size_t>(l)];
    if ((k - l) % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

}  // namespace detail

/// Strictly order-preserving maps onto [k] (surjective).
inline Integer count_k_linearizations(const RootedTree& t, int k) { return detail::surjective_count(t, k); }
inline Integer count_k_linearizations(const Forest& f, int k) { return detail::surjective_count(f, k); }

/// Strictly order-preserving maps into [k].
inline Integer count_weak_k_linearizations(const RootedTree& t, int k) {
  if (k < 1) throw std::domain_error("weak k-linearization: k must be at least 1");
  return detail::weak_linearization_table(t, k)[static_cast<std::size_t>(k)];
}
inline Integer count_weak_k_linearizations(const Forest& f, int k) {
  if (k < 1) throw std::domain_error("weak k-linearization: k must be at least 1");
  return detail::weak_linearization_table(f, k)[static_cast<std::size_t>(k)];
}

/// Murua coefficient: sum_k (-1)^{k-1}/k * omega_k(t).
inline Rational murua_omega(const RootedTree& t) {
  static detail::KeyedMemo<Rational> memo;
  if (t.is_leaf()) return 1;
  return memo.get(t.key(), [&] {
    auto weak = detail::weak_linearization_table(t, t.size());
    Rational total;
    for (int k = 1; k <= t.size(); ++k) {
      Integer surj = 0;
      for (int l = 0; l <= k; ++l) {
        Integer term = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(l)) *
                       weak[static_cast<std::size_t>(l)];
        if ((k - l) % 2 == 0)
          surj += term;
        else
          surj -= term;
      }
      Rational contrib(surj, Integer(k));
      if (k % 2 == 1)
        total += contrib;
      else
        total -= contrib;
    }
    return total;
  });
}

inline Rational murua_omega(const Forest& f) {
  Rational r = 1;
  for (const auto& t : f) r *= murua_omega(t);
  return r;
}

/// A forest with numbered vertices (preorder over the canonical child order),
/// used where concrete vertex subsets matter.
class IndexedForest {
 public:
  explicit IndexedForest(const Forest& f) {
    for (const auto& t : f) add_tree(t, -1);
  }

  int size() const { return static_cast<int>(parent_.size()); }
  const std::vector<int>& parents() const { return parent_; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  std::vector<int> roots() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (parent(v) < 0) r.push_back(v);
    return r;
  }

  /// Rebuilds the (unordered) forest described by a parent array over the
  /// listed vertices; parent entries must refer to listed vertices or be -1.
  static Forest forest_from_parents(const std::vector<int>& vertices, const std::vector<int>& parent_of) {
    std::unordered_map<int, std::vector<int>> kids;
    std::vector<int> tops;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (parent_of[i] < 0)
        tops.push_back(vertices[i]);
      else
        kids[parent_of[i]].push_back(vertices[i]);
    }
    std::function<RootedTree(int)> build = [&](int v) {
      std::vector<RootedTree> cs;
      auto it = kids.find(v);
      if (it != kids.end())
        for (int c : it->second) cs.push_back(build(c));
      return RootedTree::with_children(std::move(cs));
    };
    std::vector<RootedTree> trees;
    for (int r : tops) trees.push_back(build(r));
    return Forest(std::move(trees));
  }

 private:
  void add_tree(const RootedTree& t, int parent) {
    const int v = size();
    parent_.push_back(parent);
    for (const auto& c : t.children()) add_tree(c, v);
  }

  std::vector<int> parent_;
};

/// Sorted list of vertex ids of an IndexedForest.
using VertexSet = std::vector<int>;

/// Every vertex subset containing all roots; each concrete subset once.
inline std::vector<VertexSet> root_subforests(const IndexedForest& f) {
  std::vector<int> free_vertices;
  for (int v = 0; v < f.size(); ++v)
    if (f.parent(v) >= 0) free_vertices.push_back(v);
  if (free_vertices.size() > 30) throw std::length_error("root_subforests: forest too large");
  std::vector<VertexSet> out;
  const auto roots = f.roots();
  const std::size_t count = std::size_t{1} << free_vertices.size();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    VertexSet s = roots;
    for (std::size_t b = 0; b < free_vertices.size(); ++b)
      if (mask & (std::size_t{1} << b)) s.push_back(free_vertices[b]);
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline void check_selection(const IndexedForest& f, const VertexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(f.size()), 0);
  for (int v : s) {
    if (v < 0 || v >= f.size() || in[static_cast<std::size_t>(v)])
      throw std::domain_error("selection is not a vertex subset of the forest");
    in[static_cast<std::size_t>(v)] = 1;
  }
  for (int r : f.roots())
    if (!in[static_cast<std::size_t>(r)]) throw std::domain_error("selection does not contain every root");
}

}  // namespace detail

/// Removes the edge from each selected non-root vertex to its parent.
inline Forest cut_above(const IndexedForest& f, const VertexSet& s) {
  detail::check_selection(f, s);
  std::vector<int> parent = f.parents();
  for (int v : s) parent[static_cast<std::size_t>(v)] = -1;
  std::vector<int> vertices(static_cast<std::size_t>(f.size()));
  for (int v = 0; v < f.size(); ++v) vertices[static_cast<std::size_t>(v)] = v;
  return IndexedForest::forest_from_parents(vertices, parent);
}

/// The selected vertices with the induced order: each vertex hangs below its
/// nearest selected ancestor.
inline Forest selection_shape(const IndexedForest& f, const VertexSet& s) {
  detail::check_selection(f, s);
  std::vector<char> in(static_cast<std::size_t>(f.size()), 0);
  for (int v : s) in[static_cast<std::size_t>(v)] = 1;
  std::vector<int> parent_of;
  parent_of.reserve(s.size());
  for (int v : s) {
    int p = f.parent(v);
    while (p >= 0 && !in[static_cast<std::size_t>(p)]) p = f.parent(p);
    parent_of.push_back(p);
  }
  return IndexedForest::forest_from_parents(s, parent_of);
}

/// Murua coefficient via the Bernoulli recursion over root-containing
/// subforests of B-(t).
inline Rational murua_omega_recursive(const RootedTree& t) {
  static detail::KeyedMemo<Rational> memo;
  if (t.is_leaf()) return 1;
  return memo.get(t.key(), [&] {
    IndexedForest f(b_minus(t));
    Rational total;
    for (const auto& s : root_subforests(f)) {
      Rational b = bernoulli(static_cast<unsigned>(s.size()));
      if (b.is_zero()) continue;
      Rational term = b / Rational(forest_factorial(selection_shape(f, s)));
      for (const auto& piece : cut_above(f, s)) term *= murua_omega_recursive(piece);
      total += term;
    }
    return total;
  });
}

}  // namespace prelie

template <>
struct std::hash<prelie::RootedTree> {
  std::size_t operator()(const prelie::RootedTree& t) const { return std::hash<std::string>{}(t.key()); }
};
