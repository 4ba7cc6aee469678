#pragma once

// Cochain complexes with named bases and their homology.
//
// Every complex is stored cohomologically (the differential raises degree).
// Homologically graded objects enter and leave through to_internal_degree /
// to_native_degree.

#include "dertower/linalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dertower {

enum class Grading { homological, cohomological };

inline int to_internal_degree(Grading g, int native) { return g == Grading::homological ? -native : native; }
inline int to_native_degree(Grading g, int internal) { return g == Grading::homological ? -internal : internal; }

inline const char* to_string(Grading g) { return g == Grading::homological ? "homological" : "cohomological"; }

class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BasisElement {
  std::string label;
  int degree = 0;
};

// Ordered list of labelled basis elements; labels are unique.
class GradedBasis {
 public:
  void add(std::string label, int degree)
  {
    if (index_.count(label)) throw StructuralError("duplicate basis label: " + label);
    index_.emplace(label, elements_.size());
    elements_.push_back({std::move(label), degree});
  }
  const std::vector<BasisElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t index_of(const std::string& label) const { return index_.at(label); }

  std::vector<std::size_t> in_degree(int degree) const
  {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i].degree == degree) out.push_back(i);
    return out;
  }

 private:
  std::vector<BasisElement> elements_;
  std::map<std::string, std::size_t> index_;
};

// A cochain complex materialised on the degree window [lo, hi]; the
// differential d_n : C^n -> C^{n+1} is stored for lo <= n < hi.
class CochainComplex {
 public:
  CochainComplex() = default;
  CochainComplex(int lo, int hi) : lo_(lo), hi_(hi)
  {
    if (hi < lo) throw StructuralError("empty degree window");
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }

  void set_space(int n, std::vector<std::string> labels)
  {
    check_degree(n);
    labels_[n] = std::move(labels);
  }

  void set_differential(int n, Matrix d)
  {
    check_degree(n);
    check_degree(n + 1);
    differentials_[n] = std::move(d);
  }

  std::size_t dimension(int n) const
  {
    auto it = labels_.find(n);
    return it == labels_.end() ? 0 : it->second.size();
  }

  const std::vector<std::string>& labels(int n) const
  {
    static const std::vector<std::string> empty;
    auto it = labels_.find(n);
    return it == labels_.end() ? empty : it->second;
  }

  // Zero map of the right shape when nothing was stored.
  Matrix differential(int n) const
  {
    auto it = differentials_.find(n);
    if (it != differentials_.end()) return it->second;
    return Matrix(dimension(n + 1), dimension(n));
  }

  bool has_differential(int n) const { return n >= lo_ && n < hi_; }

  // Shapes match and consecutive differentials compose to zero.
  void check() const
  {
    for (const auto& [n, d] : differentials_) {
      if (d.rows() != dimension(n + 1) || d.cols() != dimension(n))
        throw StructuralError("differential shape mismatch in degree " + std::to_string(n));
    }
    for (int n = lo_; n + 1 < hi_; ++n) {
      if (!(differential(n + 1) * differential(n)).is_zero_matrix())
        throw StructuralError("d∘d is nonzero starting in degree " + std::to_string(n));
    }
  }

 private:
  void check_degree(int n) const
  {
    if (n < lo_ || n > hi_)
      throw StructuralError("degree " + std::to_string(n) + " outside the materialised window");
  }

  int lo_ = 0;
  int hi_ = 0;
  std::map<int, std::vector<std::string>> labels_;
  std::map<int, Matrix> differentials_;
};

struct HomologyResult {
  std::size_t dimension = 0;
  std::vector<SparseVector> representatives;  // cycles whose classes form a basis
};

// H^n = ker d_n / im d_{n-1}. Needs degrees n-1, n, n+1 inside the window.
inline HomologyResult homology(const CochainComplex& c, int n)
{
  if (n - 1 < c.lo() || n + 1 > c.hi())
    throw StructuralError("homology in degree " + std::to_string(n) +
                          " needs degrees n-1..n+1 to be materialised");
  const Matrix out = c.differential(n);
  const Matrix in = c.differential(n - 1);
  if (out.cols() != c.dimension(n) || in.rows() != c.dimension(n))
    throw StructuralError("differential shape mismatch around degree " + std::to_string(n));
  auto cycles = kernel_basis(out);
  auto boundaries = image_basis(in);
  auto q = Subquotient::nested(cycles, boundaries, c.dimension(n));
  return HomologyResult{q.dimension(), q.representatives()};
}

// Matrix of the map induced on H^n by a chain map f_n : C^n -> D^m, in the
// bases of homology representatives.
inline Matrix induced_on_homology(const CochainComplex& source, int n, const CochainComplex& target, int m,
                                  const Matrix& f)
{
  const HomologyResult h = homology(source, n);
  auto cycles = kernel_basis(target.differential(m));
  auto boundaries = image_basis(target.differential(m - 1));
  auto q = Subquotient::nested(cycles, boundaries, target.dimension(m));
  if (m - 1 < target.lo() || m + 1 > target.hi())
    throw StructuralError("induced map needs degrees m-1..m+1 of the target");
  Matrix out(q.dimension(), h.dimension);
  for (std::size_t j = 0; j < h.representatives.size(); ++j) out.set_column(j, q.reduce(f.apply(h.representatives[j])));
  return out;
}

inline HomologyResult homology(const CochainComplex& c, int native_degree, Grading presentation)
{
  return homology(c, to_internal_degree(presentation, native_degree));
}

}  // namespace dertower
