#pragma once

// The tilde extension T(V + e) and the cone of ad : Q -> Der(Q).
//
// cone^n = Der^{n-1}(Q) + Q^n with D(phi) = d phi and D(x) = ad_x - dx, where
// ad_x = [x, -] is the inner derivation of degree |x|. Algebra elements have
// filtration 0, a slot (v -> m) has filtration stage(v) + 1.

#include "dertower/filtered.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dertower {

// Adjoins an auxiliary generator e of internal degree +1 with
//   d(e) = e^2,  d(v) = dv + e v - (-1)^{|v|} v e.
inline std::shared_ptr<FreeDgAlgebra> tilde_extension(const FreeDgAlgebra& q, const std::string& aux_name = "eps")
{
  if (q.flavor() != Flavor::associative) throw UnsupportedError("the tilde extension needs an associative algebra");
  if (q.has_generator(aux_name)) throw StructuralError("generator name " + aux_name + " is already used");
  std::vector<Generator> gens = q.generators();
  gens.push_back(Generator{aux_name, to_native_degree(q.grading(), 1), 0, false, true});
  auto out = std::make_shared<FreeDgAlgebra>(q.flavor(), q.grading(), gens);
  const int e = out->index_of(aux_name);
  const AlgebraElement eps = out->gen(e);
  out->set_differential(e, out->multiply(eps, eps));
  for (std::size_t i = 0; i < q.generator_count(); ++i) {
    const Generator& g = q.generator(static_cast<int>(i));
    const int k = out->index_of(g.name);
    AlgebraElement dv = out->zero();
    for (const auto& [m, c] : q.differential(static_cast<int>(i)).terms()) {
      Monomial mapped;
      for (int letter : m.letters) mapped.letters.push_back(out->index_of(q.generator(letter).name));
      dv.add_term(mapped, c);
    }
    const AlgebraElement v = out->gen(k);
    dv += out->multiply(eps, v);
    dv -= Rational(sign_of_parity(out->internal_degree(k))) * out->multiply(v, eps);
    out->set_differential(k, dv);
  }
  return out;
}

// Generator names on which d(d(v)) != 0.
inline std::vector<std::string> square_failures(const FreeDgAlgebra& a)
{
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < a.generator_count(); ++i)
    if (!a.apply_differential(a.differential(static_cast<int>(i))).is_zero()) bad.push_back(a.generator(static_cast<int>(i)).name);
  return bad;
}

// Element of the semidirect product Q x Der(Q); homogeneous of degree k when
// x has degree k and phi has degree k.
struct LieElement {
  int degree = 0;
  AlgebraElement x;
  Derivation phi;
};

class ConeComplex {
 public:
  explicit ConeComplex(std::shared_ptr<const FreeDgAlgebra> q)
      : q_(q), der_(q, {}, Coefficients::self(q))
  {
  }

  const FreeDgAlgebra& algebra() const { return *q_; }
  const DerivationComplex& derivations() const { return der_; }

  // Basis of cone^n: algebra monomials of degree n, then slots of Der^{n-1}.
  std::size_t algebra_dimension(int n) const { return q_->basis_internal(n).size(); }
  std::size_t dimension(int n) const { return algebra_dimension(n) + der_.dimension(n - 1); }

  std::string label(int n, std::size_t i) const
  {
    const std::size_t a = algebra_dimension(n);
    if (i < a) return q_->to_string(q_->basis_internal(n)[i]);
    return "s" + der_.label(der_.basis(n - 1)[i - a]);
  }

  int weight(int n, std::size_t i) const
  {
    const std::size_t a = algebra_dimension(n);
    if (i < a) return 0;
    return q_->generator(der_.basis(n - 1)[i - a].generator).stage + 1;
  }

  // Inner derivation [x, -] of degree |x|.
  Derivation adjoint(const AlgebraElement& x, int degree) const
  {
    Derivation ad{degree, {}};
    for (int v : der_.active()) {
      AlgebraElement value = q_->commutator(x, q_->gen(v));
      if (!value.is_zero()) ad.values.emplace(v, std::move(value));
    }
    return ad;
  }

  // Split a cone vector of degree n into algebra and derivation parts.
  std::pair<AlgebraElement, Derivation> split(int n, const SparseVector& v) const
  {
    const auto& mons = q_->basis_internal(n);
    const std::size_t a = mons.size();
    AlgebraElement x = q_->zero();
    SparseVector phi;
    for (const auto& [i, c] : v) {
      if (i < a)
        x.add_term(mons[i], c);
      else
        phi.emplace(i - a, c);
    }
    return {x, der_.from_vector(n - 1, phi)};
  }

  SparseVector join(int n, const AlgebraElement& x, const Derivation& phi) const
  {
    const auto& mons = q_->basis_internal(n);
    const std::size_t a = mons.size();
    SparseVector out;
    for (const auto& [m, c] : x.terms()) {
      auto it = std::lower_bound(mons.begin(), mons.end(), m);
      if (it == mons.end() || !(*it == m)) throw StructuralError("algebra element has the wrong degree");
      add_entry(out, static_cast<std::size_t>(it - mons.begin()), c);
    }
    if (phi.degree != n - 1 && !phi.values.empty()) throw StructuralError("derivation part has the wrong degree");
    Derivation shifted = phi;
    shifted.degree = n - 1;
    for (const auto& [i, c] : der_.to_vector(shifted)) add_entry(out, a + i, c);
    return out;
  }

  SparseVector differential(int n, const SparseVector& v) const
  {
    auto [x, phi] = split(n, v);
    Derivation image = der_.differential(phi);
    if (!x.is_zero()) {
      const Derivation ad = adjoint(x, n);
      for (const auto& [g, value] : ad.values) {
        auto [it, inserted] = image.values.try_emplace(g, value);
        if (!inserted) it->second += value;
      }
    }
    image.degree = n;
    return join(n + 1, -q_->apply_differential(x), image);
  }

  Matrix differential_matrix(int n) const
  {
    Matrix d(dimension(n + 1), dimension(n));
    for (std::size_t j = 0; j < d.cols(); ++j) d.set_column(j, differential(n, unit_vector(j)));
    return d;
  }

  FilteredComplex filtered(int lo, int hi) const
  {
    CochainComplex c(lo, hi);
    std::map<int, std::vector<int>> weights;
    for (int n = lo; n <= hi; ++n) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < dimension(n); ++i) {
        labels.push_back(label(n, i));
        weights[n].push_back(weight(n, i));
      }
      c.set_space(n, std::move(labels));
    }
    for (int n = lo; n < hi; ++n) c.set_differential(n, differential_matrix(n));
    return FilteredComplex(std::move(c), std::move(weights));
  }

  CochainComplex complex(int lo, int hi) const { return filtered(lo, hi).complex(); }

  // [x + phi, y + psi] = [x,y] + phi(y) - (-1)^{|x||psi|} psi(x) + [phi,psi].
  LieElement bracket(const LieElement& a, const LieElement& b) const
  {
    LieElement out{a.degree + b.degree, q_->commutator(a.x, b.x), lie_bracket(der_, a.phi, b.phi)};
    out.x += der_.evaluate(a.phi, b.x);
    out.x -= Rational(sign_of_parity(static_cast<long>(a.degree) * b.degree)) * der_.evaluate(b.phi, a.x);
    return out;
  }

 private:
  std::shared_ptr<const FreeDgAlgebra> q_;
  DerivationComplex der_;
};

class UnsupportedCombination : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CupResult {
  int degree = 0;
  SparseVector cocycle;  // cone vector in degree n1 + n2
};

// Cup product of cone cocycles with zero algebra part, through the brace
// {d; f, g}. Refuses classes with an algebra part; throws when the product of
// the given representatives is not a cocycle.
inline CupResult cup_product(const ConeComplex& cone, int n1, const SparseVector& a, int n2, const SparseVector& b)
{
  auto [x1, f] = cone.split(n1, a);
  auto [x2, g] = cone.split(n2, b);
  if (!x1.is_zero() || !x2.is_zero())
    throw UnsupportedCombination("cup products of classes with an algebra part are not supported");
  for (auto [n, v] : {std::pair{n1, &a}, std::pair{n2, &b}})
    if (!cone.differential(n, *v).empty()) throw StructuralError("cup product input is not a cocycle");
  const Derivation h = brace(cone.derivations(), f, g);
  CupResult out{n1 + n2, cone.join(n1 + n2, cone.algebra().zero(), h)};
  if (!cone.differential(out.degree, out.cocycle).empty())
    throw StructuralError("brace of cocycles is not a cocycle");
  return out;
}

}  // namespace dertower
