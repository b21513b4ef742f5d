#include <prelie/forest.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <stdexcept>

using namespace prelie;

namespace {

using DT = DecoratedTree<RootedTree>;

const RootedTree dot;
const RootedTree chain2 = chain(2);
const RootedTree cherry = parse_tree("[[][]]");

const CKBasis ck;
const WordBasis ab{"ab"};

DT leaf(const RootedTree& t) { return DT::leaf(t, t.key()); }
DT node(const RootedTree& d1, const RootedTree& d2, std::vector<DT> children) {
  return DT::node(d1, d2, d1.key(), d2.key(), std::move(children));
}

/// Every vertex of t decorated by (its subtree; •).
DT all_dot_decoration(const RootedTree& t) {
  if (t.is_leaf()) return leaf(t);
  std::vector<DT> children;
  for (const auto& c : t.children()) children.push_back(all_dot_decoration(c));
  return node(t, dot, children);
}

template <class Index>
Tensor<Index> embed(const Tensor<Index>& x, const std::vector<int>& positions, int k) {
  Tensor<Index> out;
  for (const auto& [slots, c] : x) {
    std::vector<Monomial<Index>> wide(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < slots.size(); ++j) wide[static_cast<std::size_t>(positions[j])] = slots[j];
    out.add(wide, c);
  }
  return out;
}

/// Σ over injections [l] -> [k] (order preserving) of the embedded reduced l-fold result.
template <class Basis>
Tensor<typename Basis::index_type> full_from_reduced(const typename Basis::index_type& i, int k, const Basis& basis) {
  Tensor<typename Basis::index_type> out;
  for (int l = 1; l <= k; ++l) {
    const auto reduced = forest_formula(i, l, CoproductFlavor::reduced, basis);
    std::vector<int> pos;
    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(pos.size()) == l) {
        out += embed(reduced, pos, k);
        return;
      }
      for (int p = from; p < k; ++p) {
        pos.push_back(p);
        rec(p + 1);
        pos.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace

TEST(Sym, Examples) {
  const DT a = leaf(chain2);
  const DT b = node(chain2, dot, {leaf(dot)});
  EXPECT_EQ(sym<RootedTree>({a}), 1);
  EXPECT_EQ(sym<RootedTree>({a, a}), 1);
  EXPECT_EQ(sym<RootedTree>({a, b}), 2);
  EXPECT_EQ(sym<RootedTree>({a, a, b}), 3);
  EXPECT_EQ(sym<RootedTree>({a, leaf(dot)}), 1);
}

TEST(Lambda, LeafIsOne) { EXPECT_EQ(lambda_coeff(leaf(cherry), ck), Rational(1)); }

TEST(Lambda, AllDotDecorationIsOne) {
  for (const auto& t : enumerate_trees_up_to(7)) EXPECT_EQ(lambda_coeff(all_dot_decoration(t), ck), Rational(1)) << t;
}

TEST(Lambda, ThirteenVertexExample) {
  const RootedTree inner = b_plus(Forest{chain2, dot, dot, dot});
  const RootedTree outer = b_plus(Forest{cherry, inner, cherry});
  ASSERT_EQ(outer.size(), 13);
  const DT T = node(outer, dot,
                    {leaf(cherry), node(inner, cherry, {leaf(chain2), leaf(dot)}), node(cherry, dot, {leaf(dot), leaf(dot)})});
  EXPECT_EQ(lambda_coeff(T, ck), Rational(6));
  EXPECT_EQ(lambda_coeff(T, ck, {false}), Rational(3));
}

TEST(Lambda, ZeroWhenNoMatchingCut) {
  EXPECT_EQ(lambda_coeff(node(chain2, chain2, {leaf(dot)}), ck), Rational(0));
}

TEST(Lambda, InvalidIndex) {
  const auto bad = DecoratedTree<Word>::leaf(Word("c"), "c");
  EXPECT_THROW(lambda_coeff(bad, ab), std::domain_error);
  EXPECT_THROW(forest_formula(Word("abc"), 2, CoproductFlavor::reduced, ab), std::domain_error);
}

TEST(DecoratedTrees, Examples) {
  EXPECT_EQ(enumerate_decorated_trees(dot, ck).size(), 1u);
  const auto two = enumerate_decorated_trees(chain2, ck);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].tree.key(), "([[]])");
  EXPECT_EQ(two[1].tree.key(), "([[]];[])[([])]");
  EXPECT_EQ(enumerate_decorated_trees(Word("ab"), ab).size(), 1u);
}

TEST(DecoratedTrees, SizeBoundedByGradeAndLambdaPositive) {
  for (const auto& t : enumerate_trees_up_to(6))
    for (const auto& [tree, lambda] : enumerate_decorated_trees(t, ck)) {
      EXPECT_LE(tree.size(), t.size());
      EXPECT_GT(lambda, Rational(0));
      EXPECT_EQ(lambda, lambda_coeff(tree, ck));
    }
  for (const auto& w : enumerate_words_up_to("ab", 6))
    for (const auto& [tree, lambda] : enumerate_decorated_trees(w, ab)) {
      EXPECT_LE(tree.size(), w.size());
      EXPECT_GT(lambda, Rational(0));
    }
}

TEST(ForestFormula, Examples) {
  TensorPoly expected;
  expected.add({Forest{chain2}, Forest{dot}}, 2);
  EXPECT_EQ(forest_formula(cherry, 2, CoproductFlavor::irr, ck), expected);

  WordTensor abc;
  abc.add({WordMonomial{Word("ac")}, WordMonomial{Word("b")}}, 1);
  const WordBasis abc_basis{"abc"};
  EXPECT_EQ(forest_formula(Word("abc"), 2, CoproductFlavor::reduced, abc_basis), abc);

  EXPECT_TRUE(forest_formula(dot, 2, CoproductFlavor::reduced, ck).empty());
  EXPECT_TRUE(forest_formula(Word("ab"), 2, CoproductFlavor::reduced, ab).empty());
}

TEST(ForestFormula, IrreducibleTopArityCountsLinearizations) {
  for (const auto& t : enumerate_trees_up_to(6)) {
    TensorPoly expected;
    expected.add(std::vector<Forest>(static_cast<std::size_t>(t.size()), Forest{dot}), Rational(num_linearizations(t)));
    EXPECT_EQ(forest_formula(t, t.size(), CoproductFlavor::irr, ck), expected) << t;
  }
}

TEST(ForestFormula, ReducedArityTwoIsReducedCoproduct) {
  for (const auto& t : enumerate_trees_up_to(6))
    EXPECT_EQ(forest_formula(t, 2, CoproductFlavor::reduced, ck), ck_hopf().reduced_coproduct(t)) << t;
}

TEST(ForestFormula, CKMatchesDirectIteration) {
  const ForestEngine<CKBasis> engine{ck};
  for (const auto& t : enumerate_trees_up_to(6))
    for (int k = 2; k <= 4; ++k)
      for (auto flavor : {CoproductFlavor::reduced, CoproductFlavor::full, CoproductFlavor::irr})
        EXPECT_EQ(engine.formula(t, k, flavor), direct_iterated_coproduct(t, k, flavor, ck)) << t << " k=" << k;
}

TEST(ForestFormula, WordsMatchDirectIteration) {
  const ForestEngine<WordBasis> engine{ab};
  for (const auto& w : enumerate_words_up_to("ab", 6))
    for (int k = 2; k <= 4; ++k)
      for (auto flavor : {CoproductFlavor::reduced, CoproductFlavor::full, CoproductFlavor::irr})
        EXPECT_EQ(engine.formula(w, k, flavor), direct_iterated_coproduct(w, k, flavor, ab)) << w << " k=" << k;
}

TEST(ForestFormula, FullDecomposesIntoEmbeddedReduced) {
  for (const auto& t : enumerate_trees_up_to(5))
    for (int k = 2; k <= 4; ++k) EXPECT_EQ(forest_formula(t, k, CoproductFlavor::full, ck), full_from_reduced(t, k, ck));
  for (const auto& w : enumerate_words_up_to("ab", 5))
    for (int k = 2; k <= 4; ++k) EXPECT_EQ(forest_formula(w, k, CoproductFlavor::full, ab), full_from_reduced(w, k, ab));
}

TEST(ForestFormula, GradeConservedPerTerm) {
  const ForestEngine<CKBasis> engine{ck};
  for (const auto& t : enumerate_trees_up_to(6))
    for (const auto& term : engine.terms(t, 3, CoproductFlavor::full)) {
      int total = 0;
      for (const auto& slot : term.slots) total += vertex_count(slot);
      EXPECT_EQ(total, t.size());
      EXPECT_GT(term.lambda, Rational(0));
    }
}

TEST(ForestFormula, DroppingSymmetryFactorIsWrong) {
  // B+(2-chain, 2-chain): its root has children decorated by distinct trees
  // associated to the same index
  const RootedTree t = b_plus(Forest{chain2, chain2});
  const auto direct = direct_iterated_coproduct(t, 3, CoproductFlavor::reduced, ck);
  EXPECT_EQ(forest_formula(t, 3, CoproductFlavor::reduced, ck), direct);
  EXPECT_NE(forest_formula(t, 3, CoproductFlavor::reduced, ck, {false}), direct);
}

TEST(ForestFormula, ArityMustBePositive) {
  EXPECT_THROW(forest_formula(cherry, 0, CoproductFlavor::full, ck), std::domain_error);
}
