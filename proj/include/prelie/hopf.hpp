#pragma once

// Commutative Hopf algebra of polynomials over a generator set, given the
// reduced coproduct of each generator. Supplies the multiplicative
// coproduct, its left iterates, the reduced and irreducible projections and
// the permanent extension of a diagonal pairing.

#include <prelie/exactnum.hpp>
#include <prelie/linear.hpp>

#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prelie {

/// Slotwise product of two tensors of the same arity.
template <class G>
Tensor<G> tensor_multiply(const Tensor<G>& a, const Tensor<G>& b) {
  Tensor<G> out;
  for (const auto& [sa, ca] : a)
    for (const auto& [sb, cb] : b) {
      if (sa.size() != sb.size()) throw std::logic_error("tensor_multiply: arity mismatch");
      std::vector<Monomial<G>> slots(sa.size());
      for (std::size_t i = 0; i < sa.size(); ++i) slots[i] = sa[i] * sb[i];
      out.add(slots, ca * cb);
    }
  return out;
}

/// Permanent extension of a diagonal pairing <g|g'> = norm(g)[g = g']:
/// equal monomials pair to prod over distinct factors of m! norm(g)^m.
template <class G, class Norm>
Rational monomial_pairing(const Monomial<G>& a, const Monomial<G>& b, Norm&& norm) {
  if (a != b) return 0;
  Integer r = 1;
  for (const auto& [g, m] : a.multiplicities()) {
    r *= factorial(m);
    Integer n = norm(g);
    for (unsigned long i = 0; i < m; ++i) r *= n;
  }
  return Rational(r);
}

template <class G, class Norm>
Rational polynomial_pairing(const Polynomial<G>& x, const Polynomial<G>& y, Norm&& norm) {
  Rational total;
  for (const auto& [m, c] : x) {
    Rational d = y.coefficient(m);
    if (!d.is_zero()) total += c * d * monomial_pairing(m, m, norm);
  }
  return total;
}

template <class G, class Norm>
Rational tensor_pairing(const Tensor<G>& x, const Tensor<G>& y, Norm&& norm) {
  Rational total;
  for (const auto& [slots, c] : x) {
    Rational d = y.coefficient(slots);
    if (d.is_zero()) continue;
    Rational p = c * d;
    for (const auto& s : slots) p *= monomial_pairing(s, s, norm);
    total += p;
  }
  return total;
}

/// Drops every term with a unit slot.
template <class G>
Tensor<G> reduced_part(const Tensor<G>& t) {
  return t.filtered([](const std::vector<Monomial<G>>& slots) {
    for (const auto& s : slots)
      if (s.is_unit()) return false;
    return true;
  });
}

/// Keeps only terms whose every slot is a single generator.
template <class G>
Tensor<G> irreducible_part(const Tensor<G>& t) {
  return t.filtered([](const std::vector<Monomial<G>>& slots) {
    for (const auto& s : slots)
      if (s.degree() != 1) return false;
    return true;
  });
}

template <class G>
Tensor<G> as_tensor(const Polynomial<G>& x) {
  Tensor<G> out;
  for (const auto& [m, c] : x) out.add({m}, c);
  return out;
}

enum class CoproductFlavor { full, reduced, irr };

template <class G>
class MonomialHopf {
 public:
  /// Reduced coproduct of a generator as an arity-2 tensor; every term has a
  /// single generator on the left and a non-unit monomial on the right.
  using ReducedFn = std::function<Tensor<G>(const G&)>;

  explicit MonomialHopf(ReducedFn reduced) : state_(std::make_shared<State>()) { state_->reduced = std::move(reduced); }

  Tensor<G> reduced_coproduct(const G& g) const {
    {
      std::shared_lock lock(state_->mutex);
      auto it = state_->reduced_cache.find(g);
      if (it != state_->reduced_cache.end()) return it->second;
    }
    Tensor<G> value = state_->reduced(g);
    std::unique_lock lock(state_->mutex);
    state_->reduced_cache.try_emplace(g, value);
    return value;
  }

  /// Δ(g) = 1⊗g + g⊗1 + reduced part.
  Tensor<G> coproduct(const G& g) const {
    Tensor<G> out = reduced_coproduct(g);
    out.add({Monomial<G>(), Monomial<G>{g}}, 1);
    out.add({Monomial<G>{g}, Monomial<G>()}, 1);
    return out;
  }

  /// Multiplicative extension; Δ(1) = 1⊗1.
  Tensor<G> coproduct(const Monomial<G>& m) const {
    Tensor<G> out;
    out.add({Monomial<G>(), Monomial<G>()}, 1);
    for (const auto& g : m) out = tensor_multiply(out, coproduct(g));
    return out;
  }

  Tensor<G> coproduct(const Polynomial<G>& x) const {
    Tensor<G> out;
    for (const auto& [m, c] : x) {
      auto t = coproduct(m);
      t *= c;
      out += t;
    }
    return out;
  }

  /// Δ^[k] with Δ^[1] = Id and Δ^[k+1] = (Δ⊗Id)∘Δ^[k].
  Tensor<G> iterated(const Polynomial<G>& x, int k) const {
    if (k < 1) throw std::domain_error("iterated coproduct: k must be at least 1");
    Tensor<G> current = as_tensor(x);
    for (int step = 1; step < k; ++step) {
      Tensor<G> next;
      std::map<Monomial<G>, Tensor<G>> memo;
      for (const auto& [slots, c] : current) {
        auto it = memo.find(slots.front());
        if (it == memo.end()) it = memo.emplace(slots.front(), coproduct(slots.front())).first;
        for (const auto& [head, d] : it->second) {
          std::vector<Monomial<G>> joined = head;
          joined.insert(joined.end(), slots.begin() + 1, slots.end());
          next.add(joined, c * d);
        }
      }
      current = std::move(next);
    }
    return current;
  }

  /// (Id - ν)^{⊗k} ∘ Δ^[k].
  Tensor<G> reduced_iterated(const Polynomial<G>& x, int k) const { return reduced_part(iterated(x, k)); }

  /// Every slot projected onto single generators.
  Tensor<G> irr_iterated(const Polynomial<G>& x, int k) const { return irreducible_part(iterated(x, k)); }

  Tensor<G> iterated(const Polynomial<G>& x, int k, CoproductFlavor flavor) const {
    switch (flavor) {
      case CoproductFlavor::full:
        return iterated(x, k);
      case CoproductFlavor::reduced:
        return reduced_iterated(x, k);
      case CoproductFlavor::irr:
        return irr_iterated(x, k);
    }
    throw std::logic_error("unknown coproduct flavor");
  }

 private:
  struct State {
    ReducedFn reduced;
    std::shared_mutex mutex;
    std::map<G, Tensor<G>> reduced_cache;
  };
  std::shared_ptr<State> state_;
};

}  // namespace prelie
