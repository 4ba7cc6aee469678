#pragma once

// Cochain complexes with a decreasing filtration given by an integer weight on
// every basis element: F^s C^n is spanned by the basis elements of weight >= s.
// The differential must not lower weights.

#include "dertower/derivations.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace dertower {

class FilteredComplex {
 public:
  FilteredComplex() = default;

  // `weights[n][i]` is the filtration of basis element i in degree n.
  FilteredComplex(CochainComplex complex, std::map<int, std::vector<int>> weights)
      : complex_(std::move(complex)), weights_(std::move(weights))
  {
    bool first = true;
    for (int n = complex_.lo(); n <= complex_.hi(); ++n) {
      auto& w = weights_[n];
      if (w.size() != complex_.dimension(n)) throw StructuralError("filtration weights do not match the basis");
      for (int s : w) {
        smin_ = first ? s : std::min(smin_, s);
        smax_ = first ? s : std::max(smax_, s);
        first = false;
      }
    }
  }

  const CochainComplex& complex() const { return complex_; }
  int lo() const { return complex_.lo(); }
  int hi() const { return complex_.hi(); }
  // Weight range over the window; (0,0) for the zero complex.
  int smin() const { return smin_; }
  int smax() const { return smax_; }

  std::size_t dimension(int n) const { return complex_.dimension(n); }
  int weight(int n, std::size_t i) const { return weights_.at(n).at(i); }
  const std::vector<int>& weights(int n) const { return weights_.at(n); }

  // Coordinates of F^s C^n, in basis order.
  std::vector<std::size_t> filtration_indices(int n, int s) const
  {
    std::vector<std::size_t> out;
    if (n < lo() || n > hi()) return out;
    const auto& w = weights_.at(n);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] >= s) out.push_back(i);
    return out;
  }

  std::size_t graded_dimension(int n, int s) const
  {
    if (n < lo() || n > hi()) return 0;
    const auto& w = weights_.at(n);
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), s));
  }

  // Smallest weight present in the vector (large sentinel for zero).
  int filtration_of(int n, const SparseVector& v) const
  {
    int s = std::numeric_limits<int>::max();
    for (const auto& [i, x] : v) s = std::min(s, weight(n, i));
    return s;
  }

  // Throws when d lowers the weight of some basis element.
  void check() const
  {
    complex_.check();
    for (int n = lo(); n < hi(); ++n) {
      const Matrix d = complex_.differential(n);
      for (std::size_t j = 0; j < d.cols(); ++j)
        for (const auto& [i, x] : d.column(j))
          if (weight(n + 1, i) < weight(n, j))
            throw StructuralError("differential lowers the filtration in degree " + std::to_string(n));
    }
  }

 private:
  CochainComplex complex_;
  std::map<int, std::vector<int>> weights_;
  int smin_ = 0;
  int smax_ = 0;
};

// Der complex on degrees [lo, hi] filtered by the stage of the slot generator.
inline FilteredComplex filtered_derivations(const DerivationComplex& der, int lo, int hi)
{
  CochainComplex c = der.complex(lo, hi);
  std::map<int, std::vector<int>> weights;
  for (int p = lo; p <= hi; ++p)
    for (const auto& slot : der.basis(p)) weights[p].push_back(der.algebra().generator(slot.generator).stage);
  return FilteredComplex(std::move(c), std::move(weights));
}

// Chain map between filtered complexes, stored degreewise.
struct FilteredMap {
  std::map<int, Matrix> components;  // f_n : C^n -> D^n
};

}  // namespace dertower
