#pragma once

// Derivation complexes Der_B(A, U) with coefficients along an algebra map
// u : A -> U. A derivation of degree p sends internal degree k to k + p and
// satisfies F(ab) = F(a) u(b) + (-1)^{p|a|} u(a) F(b). The differential is
//   dF = d_U F - (-1)^p F d_A.
// A basis of Der^p is given by slots (v -> m): v an active generator, m a
// monomial of U with |m| = |v| + p.

#include "dertower/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace dertower {

struct Slot {
  int generator = 0;
  Monomial value;
  auto operator<=>(const Slot&) const = default;
};

class Coefficients {
 public:
  enum class Kind { self, trivial, map };

  static Coefficients self(std::shared_ptr<const FreeDgAlgebra> a)
  {
    return Coefficients(Kind::self, AlgebraMorphism::identity(a));
  }

  // The ground field in degree 0; u kills every generator.
  static Coefficients trivial(std::shared_ptr<const FreeDgAlgebra> a)
  {
    auto ground = std::make_shared<FreeDgAlgebra>(a->flavor(), a->grading(), std::vector<Generator>{});
    std::vector<AlgebraElement> images(a->generator_count(), ground->zero());
    return Coefficients(Kind::trivial, AlgebraMorphism(a, ground, std::move(images)));
  }

  static Coefficients along(AlgebraMorphism u) { return Coefficients(Kind::map, std::move(u)); }

  Kind kind() const { return kind_; }
  const AlgebraMorphism& map() const { return map_; }
  const FreeDgAlgebra& target() const { return map_.target(); }

 private:
  Coefficients(Kind k, AlgebraMorphism m) : kind_(k), map_(std::move(m)) {}
  Kind kind_;
  AlgebraMorphism map_;
};

// Homogeneous derivation given by its values on generators (zero elsewhere).
struct Derivation {
  int degree = 0;
  std::map<int, AlgebraElement> values;
};

class DerivationComplex {
 public:
  // `domain` selects the generators of the source subalgebra (all when
  // empty); `base` marks generators on which derivations vanish.
  DerivationComplex(std::shared_ptr<const FreeDgAlgebra> algebra, std::vector<bool> base, Coefficients coefficients,
                    std::vector<bool> domain = {})
      : algebra_(std::move(algebra)), coefficients_(std::move(coefficients)), cache_(std::make_shared<Cache>())
  {
    const std::size_t n = algebra_->generator_count();
    if (base.empty()) base.assign(n, false);
    if (domain.empty()) domain.assign(n, true);
    if (base.size() != n || domain.size() != n) throw StructuralError("generator mask has the wrong length");
    if (coefficients_.map().source().id() != algebra_->id())
      throw StructuralError("coefficient map does not start at the algebra");
    base_ = std::move(base);
    domain_ = std::move(domain);
    for (std::size_t i = 0; i < n; ++i) {
      if (base_[i] && !domain_[i]) throw StructuralError("base generator outside the domain");
      if (domain_[i] && !base_[i]) active_.push_back(static_cast<int>(i));
    }
    users_.assign(n, {});
    for (int w : active_) {
      std::set<int> letters;
      for (const auto& [m, c] : algebra_->differential(w).terms())
        letters.insert(m.letters.begin(), m.letters.end());
      for (int v : letters) users_[static_cast<std::size_t>(v)].push_back(w);
    }
  }

  const FreeDgAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const FreeDgAlgebra> algebra_ptr() const { return algebra_; }
  const FreeDgAlgebra& target() const { return coefficients_.target(); }
  const Coefficients& coefficients() const { return coefficients_; }
  const std::vector<int>& active() const { return active_; }
  bool is_active(int g) const { return domain_.at(static_cast<std::size_t>(g)) && !base_.at(static_cast<std::size_t>(g)); }
  const std::vector<bool>& base() const { return base_; }
  const std::vector<bool>& domain() const { return domain_; }

  // Sub-dg-algebra test: d of a masked generator only uses masked letters.
  static bool closed(const FreeDgAlgebra& a, const std::vector<bool>& mask)
  {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) continue;
      for (const auto& [m, c] : a.differential(static_cast<int>(i)).terms())
        for (int letter : m.letters)
          if (!mask[static_cast<std::size_t>(letter)]) return false;
    }
    return true;
  }
  bool is_complex() const { return closed(*algebra_, base_) && closed(*algebra_, domain_); }

  // Slots of Der^p ordered by (generator, monomial).
  const std::vector<Slot>& basis(int p) const
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(p);
    if (it != cache_->bases.end()) return it->second.slots;
    Basis b;
    for (int v : active_) {
      for (const auto& m : target().basis_internal(algebra_->internal_degree(v) + p)) {
        b.index.emplace(Slot{v, m}, b.slots.size());
        b.slots.push_back(Slot{v, m});
      }
    }
    return cache_->bases.emplace(p, std::move(b)).first->second.slots;
  }
  std::size_t dimension(int p) const { return basis(p).size(); }

  std::optional<std::size_t> index_of(int p, const Slot& slot) const
  {
    basis(p);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto& index = cache_->bases.at(p).index;
    auto it = index.find(slot);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::string label(const Slot& s) const
  {
    return "(" + algebra_->generator(s.generator).name + "->" + target().to_string(s.value) + ")";
  }

  int slot_degree(const Slot& s) const { return target().internal_degree(s.value) - algebra_->internal_degree(s.generator); }

  // --- conversions ---------------------------------------------------------

  Derivation from_vector(int p, const SparseVector& x) const
  {
    Derivation f{p, {}};
    const auto& slots = basis(p);
    for (const auto& [i, c] : x) {
      const Slot& s = slots.at(i);
      auto [it, inserted] = f.values.try_emplace(s.generator, target().zero());
      it->second.add_term(s.value, c);
    }
    return f;
  }

  // Coordinates on the slot basis; values on inactive generators must vanish.
  SparseVector to_vector(const Derivation& f) const
  {
    SparseVector out;
    for (const auto& [g, value] : f.values) {
      if (value.is_zero()) continue;
      if (!is_active(g)) throw StructuralError("derivation is nonzero on an inactive generator");
      for (const auto& [m, c] : value.terms()) {
        auto i = index_of(f.degree, Slot{g, m});
        if (!i) throw StructuralError("derivation value has the wrong degree");
        add_entry(out, *i, c);
      }
    }
    return out;
  }

  // F applied to an element of A, landing in U.
  AlgebraElement evaluate(const Derivation& f, const AlgebraElement& a) const
  {
    return extend_as_derivation(
        f.degree,
        [&](int g) -> const AlgebraElement* {
          auto it = f.values.find(g);
          return it == f.values.end() ? nullptr : &it->second;
        },
        coefficients_.map(), a);
  }

  // dF on the active generators.
  Derivation differential(const Derivation& f) const
  {
    Derivation out{f.degree + 1, {}};
    const Rational sign(-sign_of_parity(f.degree));
    std::set<int> touched;
    for (const auto& [g, value] : f.values) {
      if (value.is_zero()) continue;
      if (is_active(g)) touched.insert(g);
      for (int w : users_.at(static_cast<std::size_t>(g))) touched.insert(w);
    }
    for (int w : touched) {
      AlgebraElement value = target().zero();
      auto it = f.values.find(w);
      if (it != f.values.end()) value += target().apply_differential(it->second);
      value += sign * evaluate(f, algebra_->differential(w));
      if (!value.is_zero()) out.values.emplace(w, std::move(value));
    }
    return out;
  }

  SparseVector differential(int p, const SparseVector& x) const { return to_vector(differential(from_vector(p, x))); }

  // d : Der^p -> Der^{p+1}.
  Matrix differential_matrix(int p) const
  {
    const auto& slots = basis(p);
    Matrix d(dimension(p + 1), slots.size());
    for (std::size_t j = 0; j < slots.size(); ++j) d.set_column(j, differential(p, unit_vector(j)));
    return d;
  }

  CochainComplex complex(int lo, int hi) const
  {
    CochainComplex c(lo, hi);
    for (int p = lo; p <= hi; ++p) {
      std::vector<std::string> labels;
      for (const auto& s : basis(p)) labels.push_back(label(s));
      c.set_space(p, std::move(labels));
    }
    for (int p = lo; p < hi; ++p) c.set_differential(p, differential_matrix(p));
    return c;
  }

  HomologyResult cohomology(int p) const { return homology(complex(p - 1, p + 1), p); }

 private:
  struct Basis {
    std::vector<Slot> slots;
    std::map<Slot, std::size_t> index;
  };
  struct Cache {
    std::mutex mutex;
    std::map<int, Basis> bases;
  };

  std::shared_ptr<const FreeDgAlgebra> algebra_;
  Coefficients coefficients_;
  std::vector<bool> base_;
  std::vector<bool> domain_;
  std::vector<int> active_;
  std::vector<std::vector<int>> users_;  // users_[v] = generators w whose dw contains v
  std::shared_ptr<Cache> cache_;
};

// --- Lie bracket --------------------------------------------------------------

// [F,G] = F G - (-1)^{|F||G|} G F on generators; needs self coefficients.
inline Derivation lie_bracket(const DerivationComplex& der, const Derivation& f, const Derivation& g)
{
  if (der.coefficients().kind() != Coefficients::Kind::self)
    throw StructuralError("the bracket needs derivations with values in the algebra itself");
  const FreeDgAlgebra& a = der.algebra();
  Derivation out{f.degree + g.degree, {}};
  const Rational sign(-sign_of_parity(static_cast<long>(f.degree) * g.degree));
  std::set<int> support;
  for (const auto& [v, x] : f.values) support.insert(v);
  for (const auto& [v, x] : g.values) support.insert(v);
  for (int v : support) {
    AlgebraElement value = a.zero();
    if (auto it = g.values.find(v); it != g.values.end()) value += der.evaluate(f, it->second);
    if (auto it = f.values.find(v); it != f.values.end()) value += sign * der.evaluate(g, it->second);
    if (!value.is_zero()) out.values.emplace(v, std::move(value));
  }
  return out;
}

// --- brace ----------------------------------------------------------------------

// {d; f, g}(v): for each word x1..xm of dv and each pair i < j, the word with
// f(x_i) in place i and g(x_j) in place j. Moving f past x1..x_{i-1} costs
// (-1)^{|f|(|x1|+..+|x_{i-1}|)}; g moves past the original letters x1..x_{j-1}.
inline Derivation brace(const DerivationComplex& der, const Derivation& f, const Derivation& g)
{
  const FreeDgAlgebra& a = der.algebra();
  if (a.flavor() != Flavor::associative) throw UnsupportedError("brace needs an associative algebra");
  if (der.coefficients().kind() != Coefficients::Kind::self)
    throw StructuralError("brace needs derivations with values in the algebra itself");
  Derivation out{f.degree + g.degree + 1, {}};
  auto value_of = [&](const Derivation& h, int letter) -> const AlgebraElement* {
    auto it = h.values.find(letter);
    return it == h.values.end() || it->second.is_zero() ? nullptr : &it->second;
  };
  for (int v : der.active()) {
    AlgebraElement value = a.zero();
    for (const auto& [word, coeff] : a.differential(v).terms()) {
      const auto& x = word.letters;
      int before_i = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const AlgebraElement* fi = value_of(f, x[i]);
        int before_j = before_i + a.internal_degree(x[i]);
        for (std::size_t j = i + 1; j < x.size(); ++j) {
          const AlgebraElement* gj = value_of(g, x[j]);
          if (fi != nullptr && gj != nullptr) {
            const long parity = static_cast<long>(f.degree) * before_i + static_cast<long>(g.degree) * before_j;
            AlgebraElement piece = a.term(Monomial{std::vector<int>(x.begin(), x.begin() + static_cast<long>(i))}, Rational(1));
            piece = a.multiply(piece, *fi);
            piece = a.multiply(piece, a.term(Monomial{std::vector<int>(x.begin() + static_cast<long>(i) + 1,
                                                                       x.begin() + static_cast<long>(j))},
                                             Rational(1)));
            piece = a.multiply(piece, *gj);
            piece = a.multiply(piece, a.term(Monomial{std::vector<int>(x.begin() + static_cast<long>(j) + 1, x.end())},
                                             Rational(1)));
            value += (coeff * sign_of_parity(parity)) * piece;
          }
          before_j += a.internal_degree(x[j]);
        }
        before_i += a.internal_degree(x[i]);
      }
    }
    if (!value.is_zero()) out.values.emplace(v, std::move(value));
  }
  return out;
}

// --- Jacobi-Zariski -------------------------------------------------------------

// B ⊆ A ⊆ A' as generator masks of one algebra A'. The sequence
//   Der_A(A',U) -> Der_B(A',U) -> Der_B(A,U)
// is built with the inclusion and restriction maps and the connecting map
// obtained by extending by zero on A' \ A.
class JacobiZariski {
 public:
  JacobiZariski(std::shared_ptr<const FreeDgAlgebra> algebra, const std::vector<bool>& b, const std::vector<bool>& a,
                Coefficients coefficients)
      : relative_(algebra, a, coefficients),
        total_(algebra, b, coefficients),
        restricted_(algebra, b, coefficients, a)
  {
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] && !a.at(i)) throw StructuralError("B is not contained in A");
    guaranteed_exact_ = DerivationComplex::closed(*algebra, a) && DerivationComplex::closed(*algebra, b);
  }

  bool guaranteed_exact() const { return guaranteed_exact_; }
  const DerivationComplex& relative() const { return relative_; }      // Der_A(A')
  const DerivationComplex& total() const { return total_; }            // Der_B(A')
  const DerivationComplex& restricted() const { return restricted_; }  // Der_B(A)

  Matrix inclusion(int p) const { return slot_map(relative_, total_, p); }
  Matrix restriction(int p) const { return slot_map(total_, restricted_, p); }

  // Der_B(A)^p -> Der_A(A')^{p+1}: extend by zero, then apply d in Der_B(A').
  Matrix connecting(int p) const
  {
    const Matrix ext = slot_map(restricted_, total_, p);
    Matrix out(relative_.dimension(p + 1), restricted_.dimension(p));
    for (std::size_t j = 0; j < out.cols(); ++j) {
      const SparseVector image = total_.differential(p, ext.column(j));
      const Derivation f = total_.from_vector(p + 1, image);
      Derivation kept{p + 1, {}};
      for (const auto& [g, v] : f.values)
        if (relative_.is_active(g)) kept.values.emplace(g, v);
      out.set_column(j, relative_.to_vector(kept));
    }
    return out;
  }

 private:
  // Map sending each slot to the same slot when it exists, else to zero.
  static Matrix slot_map(const DerivationComplex& from, const DerivationComplex& to, int p)
  {
    const auto& slots = from.basis(p);
    Matrix m(to.dimension(p), slots.size());
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (auto i = to.index_of(p, slots[j])) m.set(*i, j, Rational(1));
    return m;
  }

  DerivationComplex relative_;
  DerivationComplex total_;
  DerivationComplex restricted_;
  bool guaranteed_exact_ = true;
};

}  // namespace dertower
