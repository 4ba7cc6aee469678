#pragma once

// Convolution product on hom(cells, H(Q)) for an associative model Q with a
// cell diagonal. Cells are a unit cell plus one cell e_v of dimension |v| + 1
// per generator; the cellular boundary is the linear part of d. An element f
// of degree k sends a cell c to H_{|c| + k}(Q), which matches cone degree k
// in homological terms.
//
//   Δ(c) = c ⊗ 1 + 1 ⊗ c + (declared terms)
//   (f * g)(c) = Σ coef (-1)^{|g||c'|} f(c') g(c'')
//   D f = -(-1)^{|f|} f ∘ ∂

#include "dertower/model_io.hpp"
#include "dertower/tower.hpp"

#include <map>
#include <string>
#include <vector>

namespace dertower {

struct ConvolutionElement {
  int degree = 0;
  std::map<int, SparseVector> values;  // cell -> coordinates in H(Q)
  bool is_zero() const
  {
    for (const auto& [c, v] : values)
      if (!v.empty()) return false;
    return true;
  }
  friend bool operator==(const ConvolutionElement& a, const ConvolutionElement& b)
  {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.degree != b.degree) return false;
    auto clean = [](const ConvolutionElement& e) {
      std::map<int, SparseVector> out;
      for (const auto& [c, v] : e.values)
        if (!v.empty()) out.emplace(c, v);
      return out;
    };
    return clean(a) == clean(b);
  }
};

class ConvolutionAlgebra {
 public:
  // Cell 0 is the unit; cell i + 1 is generator i.
  explicit ConvolutionAlgebra(const Model& model) : model_(model)
  {
    const FreeDgAlgebra& q = *model.algebra;
    if (!model.is_adams_hilton()) throw UnsupportedError("convolution products need an associative homological model");
    cells_ = q.generator_count() + 1;
    boundary_.assign(cells_, {});
    for (std::size_t i = 0; i < q.generator_count(); ++i)
      for (const auto& [g, c] : q.linear_part(static_cast<int>(i))) boundary_[i + 1].emplace_back(g + 1, c);
    diagonal_.assign(cells_, {});
    for (std::size_t c = 0; c < cells_; ++c) {
      diagonal_[c].push_back({Rational(1), static_cast<int>(c), 0});
      if (c != 0) diagonal_[c].push_back({Rational(1), 0, static_cast<int>(c)});
    }
    for (const auto& [g, terms] : model.diagonal)
      for (const auto& t : terms) diagonal_[static_cast<std::size_t>(g) + 1].push_back({t.coefficient, t.left + 1, t.right + 1});
  }

  std::size_t cell_count() const { return cells_; }
  int cell_dimension(int c) const { return c == 0 ? 0 : model_.algebra->generator(c - 1).degree + 1; }
  std::string cell_label(int c) const { return c == 0 ? "1" : "e" + model_.algebra->generator(c - 1).name; }

  // H_t(Q) in native degree t.
  const HomologyCoordinates& homology(int t) const
  {
    auto it = homology_.find(t);
    if (it == homology_.end())
      it = homology_.emplace(t, HomologyCoordinates(*model_.algebra, to_internal_degree(Grading::homological, t))).first;
    return it->second;
  }

  // Basis of degree-k elements: (cell, class) pairs with |cell| + k >= 0.
  std::vector<ConvolutionElement> basis(int k) const
  {
    std::vector<ConvolutionElement> out;
    for (std::size_t c = 0; c < cells_; ++c) {
      const int t = cell_dimension(static_cast<int>(c)) + k;
      if (t < 0) continue;
      for (std::size_t i = 0; i < homology(t).dimension(); ++i)
        out.push_back(ConvolutionElement{k, {{static_cast<int>(c), unit_vector(i)}}});
    }
    return out;
  }

  ConvolutionElement product(const ConvolutionElement& f, const ConvolutionElement& g) const
  {
    ConvolutionElement out{f.degree + g.degree, {}};
    const FreeDgAlgebra& q = *model_.algebra;
    for (std::size_t c = 0; c < cells_; ++c) {
      const int t = cell_dimension(static_cast<int>(c)) + out.degree;
      if (t < 0) continue;
      AlgebraElement sum = q.zero();
      for (const auto& term : diagonal_[c]) {
        auto fi = f.values.find(term.left);
        auto gi = g.values.find(term.right);
        if (fi == f.values.end() || gi == g.values.end() || fi->second.empty() || gi->second.empty()) continue;
        const Rational sign(sign_of_parity(static_cast<long>(g.degree) * cell_dimension(term.left)));
        sum += (sign * term.coefficient) *
               q.multiply(element(cell_dimension(term.left) + f.degree, fi->second),
                          element(cell_dimension(term.right) + g.degree, gi->second));
      }
      if (!sum.is_zero()) out.values[static_cast<int>(c)] = homology(t).reduce(sum);
    }
    return out;
  }

  ConvolutionElement differential(const ConvolutionElement& f) const
  {
    ConvolutionElement out{f.degree - 1, {}};
    const Rational sign(-sign_of_parity(f.degree));
    for (std::size_t c = 0; c < cells_; ++c) {
      SparseVector v;
      for (const auto& [b, x] : boundary_[c]) {
        auto it = f.values.find(b);
        if (it != f.values.end()) add_scaled(v, it->second, sign * x);
      }
      if (!v.empty()) out.values[static_cast<int>(c)] = std::move(v);
    }
    return out;
  }

  // Cells c where Δ∂c != (∂ ⊗ 1 + 1 ⊗ ∂)Δc, plus terms of the wrong dimension.
  std::vector<std::string> diagonal_failures() const
  {
    std::vector<std::string> bad;
    using Pair = std::map<std::pair<int, int>, Rational>;
    auto add = [](Pair& p, int a, int b, const Rational& x) {
      Rational& y = p[{a, b}];
      y += x;
      if (y == 0) p.erase({a, b});
    };
    for (std::size_t c = 0; c < cells_; ++c) {
      Pair lhs, rhs;
      for (const auto& [b, x] : boundary_[c])
        for (const auto& t : diagonal_[static_cast<std::size_t>(b)]) add(lhs, t.left, t.right, x * t.coefficient);
      for (const auto& t : diagonal_[c]) {
        if (cell_dimension(t.left) + cell_dimension(t.right) != cell_dimension(static_cast<int>(c)))
          bad.push_back(cell_label(static_cast<int>(c)) + ": diagonal term of the wrong dimension");
        for (const auto& [b, x] : boundary_[static_cast<std::size_t>(t.left)]) add(rhs, b, t.right, t.coefficient * x);
        const Rational sign(sign_of_parity(cell_dimension(t.left)));
        for (const auto& [b, x] : boundary_[static_cast<std::size_t>(t.right)]) add(rhs, t.left, b, sign * t.coefficient * x);
      }
      if (lhs != rhs) bad.push_back(cell_label(static_cast<int>(c)) + ": diagonal does not commute with the boundary");
    }
    return bad;
  }

 private:
  struct Term {
    Rational coefficient;
    int left;
    int right;
  };

  AlgebraElement element(int t, const SparseVector& coords) const
  {
    AlgebraElement e = model_.algebra->zero();
    for (const auto& [i, c] : coords) e += c * homology(t).representative(i);
    return e;
  }

  Model model_;
  std::size_t cells_ = 0;
  std::vector<std::vector<std::pair<int, Rational>>> boundary_;
  std::vector<std::vector<Term>> diagonal_;
  mutable std::map<int, HomologyCoordinates> homology_;
};

// Pairs (f, g) of basis elements with degrees in [lo, hi] where
// D(f * g) != Df * g + (-1)^{|f|} f * Dg.
inline std::vector<std::string> leibniz_failures(const ConvolutionAlgebra& conv, int lo, int hi)
{
  std::vector<std::string> bad;
  for (int k = lo; k <= hi; ++k) {
    for (int l = lo; l <= hi; ++l) {
      const auto fs = conv.basis(k);
      const auto gs = conv.basis(l);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < gs.size(); ++j) {
          const auto& f = fs[i];
          const auto& g = gs[j];
          const ConvolutionElement lhs = conv.differential(conv.product(f, g));
          ConvolutionElement rhs = conv.product(conv.differential(f), g);
          const ConvolutionElement second = conv.product(f, conv.differential(g));
          const Rational sign(sign_of_parity(f.degree));
          for (const auto& [c, v] : second.values) add_scaled(rhs.values[c], v, sign);
          rhs.degree = lhs.degree;
          if (!(lhs == rhs))
            bad.push_back("degrees " + std::to_string(k) + "," + std::to_string(l) + " basis " + std::to_string(i) +
                          "," + std::to_string(j));
        }
      }
    }
  }
  return bad;
}

}  // namespace dertower
