#pragma once

// Checks that read the tower spectral sequence of a derivation complex
// against its expected shape: the first page as hom(V_s, H(U)), vanishing
// regions from connectivity and truncation of H(U), and degeneration.

#include "dertower/spectral.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace dertower {

// Coordinates of H^n(A) in an internal degree n.
class HomologyCoordinates {
 public:
  HomologyCoordinates(const FreeDgAlgebra& a, int n) : a_(&a), n_(n), basis_(a.basis_internal(n))
  {
    const CochainComplex c = underlying_complex(a, n - 1, n + 1);
    quotient_ = Subquotient::nested(kernel_basis(c.differential(n)), image_basis(c.differential(n - 1)), basis_.size());
  }

  std::size_t dimension() const { return quotient_.dimension(); }

  SparseVector vector_of(const AlgebraElement& x) const
  {
    SparseVector out;
    for (const auto& [m, c] : x.terms()) {
      auto it = std::lower_bound(basis_.begin(), basis_.end(), m);
      if (it == basis_.end() || !(*it == m)) throw StructuralError("element has the wrong degree");
      add_entry(out, static_cast<std::size_t>(it - basis_.begin()), c);
    }
    return out;
  }

  // Throws OutsideSpanError when x is not a cycle.
  SparseVector reduce(const AlgebraElement& x) const { return quotient_.reduce(vector_of(x)); }

  AlgebraElement representative(std::size_t i) const
  {
    AlgebraElement e = a_->zero();
    for (const auto& [k, c] : quotient_.representatives().at(i)) e.add_term(basis_[k], c);
    return e;
  }

  int degree() const { return n_; }

 private:
  const FreeDgAlgebra* a_;
  int n_;
  std::vector<Monomial> basis_;
  Subquotient quotient_;
};

// --- first page ------------------------------------------------------------------

struct FirstPageEntry {
  int s = 0;
  int n = 0;
  std::size_t predicted = 0;  // dim hom(V_s, H(U)) in degree n
  std::size_t engine = 0;     // dim E_1^{s,n}
  bool basis_agrees = true;   // E_1 maps isomorphically onto hom(V_s, H(U))
  bool d1_agrees = true;      // d_1 = -(-1)^n hom(d_(1), 1)
};

struct FirstPageReport {
  std::vector<FirstPageEntry> entries;
  bool holds() const
  {
    return std::all_of(entries.begin(), entries.end(), [](const FirstPageEntry& e) {
      return e.predicted == e.engine && e.basis_agrees && e.d1_agrees;
    });
  }
};

namespace detail {

class HomBlocks {
 public:
  using Cache = std::map<int, HomologyCoordinates>;

  HomBlocks(const DerivationComplex& der, int s, int n, Cache& cache) : der_(der), cache_(cache)
  {
    for (int v : der.active()) {
      if (der.algebra().generator(v).stage != s) continue;
      const int k = der.algebra().internal_degree(v) + n;
      blocks_.push_back(Block{v, offset_, coordinates(k)});
      offset_ += blocks_.back().h->dimension();
    }
  }

  std::size_t dimension() const { return offset_; }

  // Coordinates of the weight-s part of a derivation in hom(V_s, H(U)).
  SparseVector coordinates_of(const Derivation& f) const
  {
    SparseVector out;
    for (const auto& b : blocks_) {
      auto it = f.values.find(b.v);
      if (it == f.values.end()) continue;
      for (const auto& [i, c] : b.h->reduce(it->second)) add_entry(out, b.offset + i, c);
    }
    return out;
  }

  struct Block {
    int v;
    std::size_t offset;
    const HomologyCoordinates* h;
  };
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  const HomologyCoordinates* coordinates(int k)
  {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, HomologyCoordinates(der_.target(), k)).first;
    return &it->second;
  }

  const DerivationComplex& der_;
  Cache& cache_;
  std::vector<Block> blocks_;
  std::size_t offset_ = 0;
};

}  // namespace detail

// `fc` must be filtered_derivations(der, ...) and `ss` built on it.
inline FirstPageReport first_page_law(const DerivationComplex& der, const FilteredComplex& fc, SpectralSequence& ss, int nlo,
                                      int nhi)
{
  FirstPageReport report;
  const FreeDgAlgebra& a = der.algebra();
  detail::HomBlocks::Cache cache;
  std::map<std::pair<int, int>, Matrix> change;  // E_1 reps -> hom coordinates
  auto to_hom = [&](int s, int n) -> const Matrix& {
    auto key = std::make_pair(s, n);
    if (auto it = change.find(key); it != change.end()) return it->second;
    const detail::HomBlocks blocks(der, s, n, cache);
    const Subquotient& e1 = ss.entry(1, s, n);
    Matrix p(blocks.dimension(), e1.dimension());
    for (std::size_t j = 0; j < e1.dimension(); ++j) {
      const SparseVector part = detail::project(e1.representatives()[j], fc, n, s, s);
      p.set_column(j, blocks.coordinates_of(der.from_vector(n, part)));
    }
    return change.emplace(key, std::move(p)).first->second;
  };
  std::set<int> stages;
  for (int v : der.active()) stages.insert(a.generator(v).stage);
  for (int s : stages) {
    for (int n = nlo; n <= nhi; ++n) {
      FirstPageEntry e{s, n};
      const detail::HomBlocks src(der, s, n, cache);
      e.predicted = src.dimension();
      e.engine = ss.dimension(1, s, n);
      const Matrix& p = to_hom(s, n);
      e.basis_agrees = p.rows() == p.cols() && rank(p) == p.cols();
      if (n < nhi) {
        const detail::HomBlocks dst(der, s + 1, n + 1, cache);
        Matrix predicted(dst.dimension(), src.dimension());
        const Rational sign(-sign_of_parity(n));
        for (const auto& b : src.blocks()) {
          for (const auto& c : dst.blocks()) {
            const auto lin = a.linear_part(c.v);
            auto it = lin.find(b.v);
            if (it == lin.end()) continue;
            // same coefficient degree on both sides, so the class bases coincide
            for (std::size_t i = 0; i < b.h->dimension(); ++i)
              predicted.set(c.offset + i, b.offset + i, sign * it->second);
          }
        }
        const Matrix lhs = to_hom(s + 1, n + 1) * ss.differential(1, s, n);
        e.d1_agrees = lhs == predicted * p;
      }
      report.entries.push_back(e);
    }
  }
  return report;
}

// --- vanishing and degeneration -------------------------------------------------------

struct CollapseReport {
  bool applicable = false;  // every active generator sits in stage |degree|
  int k = 0;                // lowest native degree with H(U) != 0
  int b = 0;                // highest one, when below the examined range
  bool b_known = false;
  std::size_t predicted_zero_cells = 0;
  std::vector<std::string> vanishing_failures;
  bool degenerates_predicted = false;  // k == b == 0
  std::vector<std::string> degeneration_failures;
  bool holds() const { return vanishing_failures.empty() && degeneration_failures.empty(); }
};

// Vanishing regions of E_1 for a tower with stage = |degree|, in the (s, t)
// labels with t = n - s:
//   homological:   E_1 = 0 when t >= 1 - k or t <= -(b + 1)
//   cohomological: with t' = -t, E_1 = 0 when 2s <= k + t' - 1 or 2s >= t' + b + 1.
// When H(U) sits in degree 0 only, E_2 = E_infinity is also checked.
inline CollapseReport collapse_report(const DerivationComplex& der, SpectralSequence& ss, int nlo, int nhi)
{
  CollapseReport report;
  const FreeDgAlgebra& a = der.algebra();
  report.applicable = std::all_of(der.active().begin(), der.active().end(),
                                  [&](int v) { return a.generator(v).stage == std::abs(a.generator(v).degree); });
  if (!report.applicable) return report;

  // coefficient degrees reached by the window
  std::set<int> degrees;
  for (int v : der.active())
    for (int n = nlo; n <= nhi; ++n) degrees.insert(to_native_degree(a.grading(), a.internal_degree(v) + n));
  std::set<int> nonzero;
  for (int m : degrees) {
    if (der.target().basis_in_degree(m).empty()) continue;
    if (algebra_homology(der.target(), m).dimension > 0) nonzero.insert(m);
  }
  if (nonzero.empty()) return report;
  report.k = *nonzero.begin();
  report.b = *nonzero.rbegin();
  report.b_known = report.b < *degrees.rbegin();
  report.degenerates_predicted = report.b_known && report.k == 0 && report.b == 0;

  std::set<int> stages;
  for (int v : der.active()) stages.insert(a.generator(v).stage);
  const bool homological = a.grading() == Grading::homological;
  for (int s : stages) {
    for (int n = nlo; n <= nhi; ++n) {
      const int t = n - s;
      bool zero;
      if (homological) {
        zero = t >= 1 - report.k || (report.b_known && t <= -(report.b + 1));
      } else {
        const int tp = -t;
        zero = 2 * s <= report.k + tp - 1 || (report.b_known && 2 * s >= tp + report.b + 1);
      }
      if (!zero) continue;
      ++report.predicted_zero_cells;
      if (ss.dimension(1, s, n) != 0)
        report.vanishing_failures.push_back("E_1 at (s=" + std::to_string(s) + ", t=" + std::to_string(t) + ") is nonzero");
    }
  }
  if (report.degenerates_predicted) {
    for (int s = ss.smin(); s <= ss.smax(); ++s)
      for (int n = nlo; n <= nhi; ++n)
        if (ss.dimension(2, s, n) != ss.e_infinity(s, n).dimension())
          report.degeneration_failures.push_back("E_2 != E_inf at (s=" + std::to_string(s) + ", n=" + std::to_string(n) + ")");
  }
  return report;
}

}  // namespace dertower
