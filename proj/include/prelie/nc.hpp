#pragma once

// Non-crossing partitions, their nesting forests, and conversions between
// moments and free, Boolean and monotone cumulants of tuples of variables.

#include <prelie/exactnum.hpp>
#include <prelie/trees.hpp>
#include <prelie/words.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace prelie {

/// Partition of {1..n} into blocks; blocks sorted internally and by minimum.
class NCPartition {
 public:
  using Block = std::vector<int>;

  NCPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end());
    validate();
  }

  int n() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  bool is_irreducible() const { return !blocks_.empty() && blocks_.front().back() == n_; }
  bool is_interval() const {
    for (const auto& b : blocks_)
      if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
    return true;
  }

  /// Index of the innermost block whose span strictly contains block b, if any.
  std::optional<std::size_t> parent_block(std::size_t b) const {
    std::optional<std::size_t> best;
    const auto& inner = blocks_[b];
    for (std::size_t v = 0; v < blocks_.size(); ++v) {
      if (v == b) continue;
      const auto& outer = blocks_[v];
      if (outer.front() < inner.front() && inner.back() < outer.back())
        if (!best || blocks_[*best].front() < outer.front()) best = v;
    }
    return best;
  }

  friend bool operator==(const NCPartition& a, const NCPartition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const NCPartition& a, const NCPartition& b) {
    return std::tie(a.n_, a.blocks_) < std::tie(b.n_, b.blocks_);
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += "|";
      for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
        if (j) s += ",";
        s += std::to_string(blocks_[i][j]);
      }
    }
    return s + "}";
  }

 private:
  void validate() const {
    if (n_ < 1) throw std::domain_error("NCPartition: n must be positive");
    std::vector<int> owner(static_cast<std::size_t>(n_) + 1, -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].empty()) throw std::domain_error("NCPartition: empty block");
      for (int x : blocks_[b]) {
        if (x < 1 || x > n_ || owner[static_cast<std::size_t>(x)] != -1)
          throw std::domain_error("NCPartition: blocks do not partition [n]");
        owner[static_cast<std::size_t>(x)] = static_cast<int>(b);
      }
    }
    for (int x = 1; x <= n_; ++x)
      if (owner[static_cast<std::size_t>(x)] == -1) throw std::domain_error("NCPartition: blocks do not cover [n]");
    for (int a = 1; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b)
        for (int c = b + 1; c <= n_; ++c)
          for (int d = c + 1; d <= n_; ++d) {
            const auto oa = owner[static_cast<std::size_t>(a)];
            const auto ob = owner[static_cast<std::size_t>(b)];
            if (oa == owner[static_cast<std::size_t>(c)] && ob == owner[static_cast<std::size_t>(d)] && oa != ob)
              throw std::domain_error("NCPartition: blocks cross");
          }
  }

  int n_;
  std::vector<Block> blocks_;
};

namespace detail {

/// Non-crossing partitions of {lo..hi} (empty range gives one empty partition).
inline std::vector<std::vector<NCPartition::Block>> nc_blocks(int lo, int hi) {
  if (lo > hi) return {{}};
  std::vector<std::vector<NCPartition::Block>> out;
  // the block containing lo is {lo = b_0 < b_1 < ... }; each gap between
  // consecutive members, and the tail after the last, is filled independently
  const int span = hi - lo;
  for (unsigned mask = 0; mask < (1u << span); ++mask) {
    NCPartition::Block first{lo};
    for (int j = 0; j < span; ++j)
      if (mask & (1u << j)) first.push_back(lo + 1 + j);
    std::vector<std::vector<NCPartition::Block>> partial{{first}};
    std::vector<int> bounds = first;
    bounds.push_back(hi + 1);
    for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
      auto fills = nc_blocks(bounds[g] + 1, bounds[g + 1] - 1);
      std::vector<std::vector<NCPartition::Block>> grown;
      for (const auto& p : partial)
        for (const auto& f : fills) {
          auto q = p;
          q.insert(q.end(), f.begin(), f.end());
          grown.push_back(std::move(q));
        }
      partial = std::move(grown);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

}  // namespace detail

inline std::vector<NCPartition> enumerate_nc(int n) {
  if (n < 1) throw std::domain_error("enumerate_nc: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::vector<NCPartition>> memo;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<NCPartition> out;
  for (auto& blocks : detail::nc_blocks(1, n)) out.emplace_back(n, std::move(blocks));
  std::sort(out.begin(), out.end());
  memo.emplace(n, out);
  return out;
}

/// 1 and n in the same block.
inline std::vector<NCPartition> enumerate_nc_irr(int n) {
  std::vector<NCPartition> out;
  for (auto& p : enumerate_nc(n))
    if (p.is_irreducible()) out.push_back(std::move(p));
  return out;
}

inline std::vector<NCPartition> enumerate_nc_irr_k(int n, int k) {
  std::vector<NCPartition> out;
  for (auto& p : enumerate_nc_irr(n))
    if (static_cast<int>(p.block_count()) == k) out.push_back(std::move(p));
  return out;
}

/// Interval partitions, one per composition of n.
inline std::vector<NCPartition> enumerate_interval(int n) {
  if (n < 1) throw std::domain_error("enumerate_interval: n must be positive");
  std::vector<NCPartition> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<NCPartition::Block> blocks{{1}};
    for (int x = 2; x <= n; ++x) {
      if (mask & (1u << (x - 2)))
        blocks.push_back({x});
      else
        blocks.back().push_back(x);
    }
    out.emplace_back(n, std::move(blocks));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Nesting forest: one tree per irreducible component, ordered by minimum;
/// a block's children are the blocks it covers in the nesting order.
struct NestingForest {
  std::vector<RootedTree> components;
  /// block index of each component's root, parallel to components
  std::vector<std::size_t> root_blocks;

  Forest forest() const { return Forest(components); }
  int vertex_count() const {
    int n = 0;
    for (const auto& t : components) n += t.size();
    return n;
  }
};

inline NestingForest nesting_forest(const NCPartition& p) {
  const auto& blocks = p.blocks();
  std::vector<std::vector<std::size_t>> kids(blocks.size());
  std::vector<std::size_t> roots;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto parent = p.parent_block(b);
    if (parent)
      kids[*parent].push_back(b);
    else
      roots.push_back(b);
  }
  std::function<RootedTree(std::size_t)> build = [&](std::size_t b) {
    std::vector<RootedTree> cs;
    for (auto c : kids[b]) cs.push_back(build(c));
    return RootedTree::with_children(std::move(cs));
  };
  NestingForest f;
  for (auto r : roots) {  // blocks are sorted by minimum already
    f.components.push_back(build(r));
    f.root_blocks.push_back(r);
  }
  return f;
}

inline Integer forest_factorial(const NestingForest& f) { return forest_factorial(f.forest()); }
inline Rational forest_omega(const NestingForest& f) { return murua_omega(f.forest()); }

enum class Brand { moment, free, boolean, monotone };

inline std::string to_string(Brand b) {
  switch (b) {
    case Brand::moment:
      return "moment";
    case Brand::free:
      return "free";
    case Brand::boolean:
      return "boolean";
    case Brand::monotone:
      return "monotone";
  }
  return "?";
}

inline Brand parse_brand(std::string_view s) {
  if (s == "moment" || s == "moments") return Brand::moment;
  if (s == "free") return Brand::free;
  if (s == "boolean") return Brand::boolean;
  if (s == "monotone") return Brand::monotone;
  throw std::invalid_argument("unknown brand '" + std::string(s) + "'");
}

/// A multilinear functional on tuples of variables, given on every word of
/// length 1..maxlen over the variable symbols.
class CumulantTable {
 public:
  CumulantTable(Brand brand, std::string variables, int maxlen, std::map<Word, Rational> values = {})
      : brand_(brand), variables_(std::move(variables)), maxlen_(maxlen), values_(std::move(values)) {
    if (maxlen_ < 1) throw std::domain_error("CumulantTable: maxlen must be positive");
    if (variables_.empty()) throw std::domain_error("CumulantTable: no variables");
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (variables_.find(variables_[i]) != i) throw std::domain_error("CumulantTable: repeated variable symbol");
  }

  Brand brand() const { return brand_; }
  const std::string& variables() const { return variables_; }
  int maxlen() const { return maxlen_; }
  const std::map<Word, Rational>& values() const { return values_; }

  void set(const Word& w, const Rational& v) {
    if (w.size() > maxlen_ || w.letters().find_first_not_of(variables_) != std::string::npos)
      throw std::domain_error("CumulantTable: word '" + w.letters() + "' outside the table's range");
    values_[w] = v;
  }

  const Rational& at(const Word& w) const {
    auto it = values_.find(w);
    if (it == values_.end()) throw std::domain_error("CumulantTable: no value for '" + w.letters() + "'");
    return it->second;
  }

  std::vector<Word> words() const { return enumerate_words_up_to(variables_, maxlen_); }

  std::vector<Word> missing_words() const {
    std::vector<Word> out;
    for (const auto& w : words())
      if (!values_.count(w)) out.push_back(w);
    return out;
  }

  /// Throws a domain error listing every missing word.
  void require_complete() const {
    auto missing = missing_words();
    if (missing.empty()) return;
    std::string list;
    for (const auto& w : missing) list += (list.empty() ? "" : ",") + w.letters();
    throw std::domain_error("incomplete " + to_string(brand_) + " table; missing words: " + list);
  }

  CumulantTable with_brand(Brand b) const { return CumulantTable(b, variables_, maxlen_, values_); }

  friend bool operator==(const CumulantTable& a, const CumulantTable& b) {
    return a.brand_ == b.brand_ && a.variables_ == b.variables_ && a.maxlen_ == b.maxlen_ && a.values_ == b.values_;
  }

 private:
  Brand brand_;
  std::string variables_;
  int maxlen_;
  std::map<Word, Rational> values_;
};

/// f_π(w) = product over blocks V of f(w|V).
template <class F>
Rational partition_product(const NCPartition& p, const Word& w, F&& f) {
  Rational r = 1;
  for (const auto& block : p.blocks()) {
    std::vector<int> positions;
    positions.reserve(block.size());
    for (int x : block) positions.push_back(x - 1);
    r *= f(w.restrict_to(positions));
    if (r.is_zero()) break;
  }
  return r;
}

namespace detail {

inline Rational sign_by_blocks(const NCPartition& p) { return p.block_count() % 2 == 1 ? Rational(1) : Rational(-1); }

/// Weight of π in a sum, given the source and target of a direct formula.
using PartitionWeight = std::function<Rational(const NCPartition&)>;

struct DirectFormula {
  std::function<std::vector<NCPartition>(int)> partitions;
  PartitionWeight weight;
};

inline Rational inverse_factorial_weight(const NCPartition& p) {
  return Rational(Integer(1), forest_factorial(nesting_forest(p)));
}

inline std::optional<DirectFormula> direct_formula(Brand from, Brand to) {
  using B = Brand;
  auto one = [](const NCPartition&) { return Rational(1); };
  if (to == B::moment) {
    switch (from) {
      case B::free:
        return DirectFormula{enumerate_nc, one};
      case B::boolean:
        return DirectFormula{enumerate_interval, one};
      case B::monotone:
        return DirectFormula{enumerate_nc, inverse_factorial_weight};
      default:
        return std::nullopt;
    }
  }
  if (from == B::free && to == B::boolean) return DirectFormula{enumerate_nc_irr, one};
  if (from == B::boolean && to == B::free) return DirectFormula{enumerate_nc_irr, sign_by_blocks};
  if (from == B::monotone && to == B::boolean) return DirectFormula{enumerate_nc_irr, inverse_factorial_weight};
  if (from == B::monotone && to == B::free)
    return DirectFormula{enumerate_nc_irr,
                         [](const NCPartition& p) { return sign_by_blocks(p) * inverse_factorial_weight(p); }};
  if (from == B::boolean && to == B::monotone)
    return DirectFormula{enumerate_nc_irr, [](const NCPartition& p) { return forest_omega(nesting_forest(p)); }};
  if (from == B::free && to == B::monotone)
    return DirectFormula{enumerate_nc_irr,
                         [](const NCPartition& p) { return sign_by_blocks(p) * forest_omega(nesting_forest(p)); }};
  return std::nullopt;
}

inline CumulantTable apply_formula(const CumulantTable& source, Brand target, const DirectFormula& formula) {
  CumulantTable out(target, source.variables(), source.maxlen());
  std::map<int, std::vector<std::pair<NCPartition, Rational>>> weighted;
  for (int n = 1; n <= source.maxlen(); ++n)
    for (const auto& p : formula.partitions(n)) {
      Rational wgt = formula.weight(p);
      if (!wgt.is_zero()) weighted[n].emplace_back(p, wgt);
    }
  auto lookup = [&source](const Word& u) -> Rational { return source.at(u); };
  for (const auto& w : source.words()) {
    Rational total;
    for (const auto& [p, wgt] : weighted[w.size()]) total += wgt * partition_product(p, w, lookup);
    out.set(w, total);
  }
  return out;
}

/// Inverts m(w) = sum_π weight(π) f_π(w) for f by induction on |w|; the
/// one-block partition must have weight 1.
inline CumulantTable invert_from_moments(const CumulantTable& moments, Brand target, const DirectFormula& formula) {
  CumulantTable out(target, moments.variables(), moments.maxlen());
  auto lookup = [&out](const Word& u) -> Rational { return out.at(u); };
  for (int n = 1; n <= moments.maxlen(); ++n) {
    std::vector<std::pair<NCPartition, Rational>> weighted;
    for (const auto& p : formula.partitions(n)) {
      if (p.block_count() == 1) continue;
      Rational wgt = formula.weight(p);
      if (!wgt.is_zero()) weighted.emplace_back(p, wgt);
    }
    for (const auto& w : enumerate_words(moments.variables(), n)) {
      Rational value = moments.at(w);
      for (const auto& [p, wgt] : weighted) value -= wgt * partition_product(p, w, lookup);
      out.set(w, value);
    }
  }
  return out;
}

}  // namespace detail

enum class Route { direct, via_moments };

inline CumulantTable to_moments(const CumulantTable& table) {
  table.require_complete();
  if (table.brand() == Brand::moment) return table;
  return detail::apply_formula(table, Brand::moment, *detail::direct_formula(table.brand(), Brand::moment));
}

inline CumulantTable from_moments(const CumulantTable& moments, Brand target) {
  moments.require_complete();
  if (moments.brand() != Brand::moment) throw std::domain_error("from_moments: input is not a moment table");
  if (target == Brand::moment) return moments;
  return detail::invert_from_moments(moments, target, *detail::direct_formula(target, Brand::moment));
}

/// Converts between brands. The direct route uses the closed formula for the
/// pair (moment targets use the moment formulas, moment sources invert them);
/// via_moments always passes through moments.
inline CumulantTable convert(const CumulantTable& table, Brand target, Route route = Route::direct) {
  table.require_complete();
  if (table.brand() == target) return table;
  if (route == Route::via_moments || table.brand() == Brand::moment || target == Brand::moment)
    return from_moments(to_moments(table), target);
  return detail::apply_formula(table, target, *detail::direct_formula(table.brand(), target));
}

/// ⟨exp◁(α)|w⟩ = sum over irreducible π of α_π(w) / t(π)!.
template <std::invocable<const Word&> F>
Rational exp_functional(F&& alpha, const Word& w) {
  Rational total;
  for (const auto& p : enumerate_nc_irr(w.size()))
    total += detail::inverse_factorial_weight(p) * partition_product(p, w, alpha);
  return total;
}

/// ⟨Ω(α)|w⟩ = sum over irreducible π of ω(t(π)) α_π(w).
template <std::invocable<const Word&> F>
Rational magnus_functional(F&& alpha, const Word& w) {
  Rational total;
  for (const auto& p : enumerate_nc_irr(w.size())) {
    Rational wgt = forest_omega(nesting_forest(p));
    if (!wgt.is_zero()) total += wgt * partition_product(p, w, alpha);
  }
  return total;
}

inline Rational exp_functional(const CumulantTable& alpha, const Word& w) {
  return exp_functional([&alpha](const Word& u) { return alpha.at(u); }, w);
}

inline Rational magnus_functional(const CumulantTable& alpha, const Word& w) {
  return magnus_functional([&alpha](const Word& u) { return alpha.at(u); }, w);
}

}  // namespace prelie
