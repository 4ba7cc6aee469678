#pragma once

// Exact sparse linear algebra over the rationals.
//
// Vectors are sparse maps index -> Rational without stored zeros. Matrices
// are stored column-major because every matrix in this library is assembled
// one basis image at a time.

#include "dertower/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dertower {

using SparseVector = std::map<std::size_t, Rational>;

inline void add_scaled(SparseVector& target, const SparseVector& source, const Rational& factor)
{
  if (is_zero(factor)) return;
  for (const auto& [index, value] : source) {
    auto [it, inserted] = target.try_emplace(index, value * factor);
    if (!inserted) {
      it->second += value * factor;
      if (is_zero(it->second)) target.erase(it);
    }
  }
}

inline void add_entry(SparseVector& target, std::size_t index, const Rational& value)
{
  if (is_zero(value)) return;
  auto [it, inserted] = target.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (is_zero(it->second)) target.erase(it);
  }
}

inline SparseVector scaled(const SparseVector& v, const Rational& factor)
{
  SparseVector out;
  if (is_zero(factor)) return out;
  for (const auto& [i, x] : v) out.emplace(i, x * factor);
  return out;
}

inline SparseVector unit_vector(std::size_t index)
{
  return SparseVector{{index, Rational(1)}};
}

inline SparseVector from_dense(const std::vector<Rational>& dense)
{
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!is_zero(dense[i])) v.emplace(i, dense[i]);
  return v;
}

inline std::vector<Rational> to_dense(const SparseVector& v, std::size_t length)
{
  std::vector<Rational> out(length);
  for (const auto& [i, x] : v) {
    if (i >= length) throw std::out_of_range("sparse vector index exceeds length");
    out[i] = x;
  }
  return out;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows)
  {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static Matrix from_columns(std::size_t rows, std::vector<SparseVector> columns)
  {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, std::move(columns[j]));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  const SparseVector& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVector>& columns() const { return columns_; }

  void set_column(std::size_t j, SparseVector v)
  {
    for (auto it = v.begin(); it != v.end();) {
      if (it->first >= rows_) throw std::out_of_range("matrix row index out of range");
      if (is_zero(it->second))
        it = v.erase(it);
      else
        ++it;
    }
    columns_.at(j) = std::move(v);
  }

  Rational at(std::size_t i, std::size_t j) const
  {
    const auto& c = columns_.at(j);
    auto it = c.find(i);
    return it == c.end() ? Rational(0) : it->second;
  }

  void set(std::size_t i, std::size_t j, const Rational& value)
  {
    if (i >= rows_) throw std::out_of_range("matrix row index out of range");
    auto& c = columns_.at(j);
    if (is_zero(value))
      c.erase(i);
    else
      c[i] = value;
  }

  SparseVector apply(const SparseVector& x) const
  {
    SparseVector out;
    for (const auto& [j, coeff] : x) add_scaled(out, columns_.at(j), coeff);
    return out;
  }

  std::size_t nonzeros() const
  {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero_matrix() const
  {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  std::vector<std::vector<Rational>> dense() const
  {
    std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols()));
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, x] : columns_[j]) out[i][j] = x;
    return out;
  }

  Matrix transpose() const
  {
    Matrix t(cols(), rows_);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, x] : columns_[j]) t.columns_[i].emplace(j, x);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b)
  {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) out.columns_[j] = a.apply(b.columns_[j]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b)
  {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

// Incremental echelon basis. Every stored vector is normalised to a leading
// coefficient of 1 and carries a tag: the combination of inserted inputs that
// produced it. Reduction only clears leading entries, which is enough to
// decide membership and to read off coordinates.
class Echelon {
 public:
  struct Reduction {
    SparseVector residual;
    SparseVector tag;  // input - residual == -(sum of tag_i * inserted_i)
  };

  // Returns true when v was independent of the current span.
  bool insert(SparseVector v, SparseVector tag)
  {
    auto red = reduce_impl(std::move(v), std::move(tag));
    if (red.residual.empty()) return false;
    const std::size_t lead = red.residual.begin()->first;
    const Rational inv = 1 / red.residual.begin()->second;
    rows_.emplace(lead, Row{scaled(red.residual, inv), scaled(red.tag, inv)});
    return true;
  }

  Reduction reduce(SparseVector v) const { return reduce_impl(std::move(v), SparseVector{}); }

  bool contains(const SparseVector& v) const { return reduce(v).residual.empty(); }

  std::size_t rank() const { return rows_.size(); }

  std::vector<std::size_t> pivots() const
  {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& [lead, row] : rows_) p.push_back(lead);
    return p;
  }

 private:
  struct Row {
    SparseVector vec;
    SparseVector tag;
  };

  // Tag semantics: on entry `tag` describes v as a combination of inputs;
  // every subtraction of a stored row subtracts its tag as well.
  Reduction reduce_impl(SparseVector v, SparseVector tag) const
  {
    auto search = v.begin();
    while (search != v.end()) {
      auto row = rows_.find(search->first);
      if (row == rows_.end()) {
        ++search;
        continue;
      }
      const Rational factor = search->second;
      const std::size_t lead = search->first;
      add_scaled(v, row->second.vec, -factor);
      add_scaled(tag, row->second.tag, -factor);
      search = v.lower_bound(lead);
    }
    return Reduction{std::move(v), std::move(tag)};
  }

  std::map<std::size_t, Row> rows_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination: pivot on the smallest column, taking the first
// remaining row with a nonzero entry in that column.
inline RrefResult rref(const Matrix& m)
{
  std::vector<SparseVector> rows(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, x] : m.column(j)) rows[i].emplace(j, x);

  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t pivot_row = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r].count(col)) {
        pivot_row = r;
        break;
      }
    if (pivot_row == rows.size()) continue;
    std::swap(rows[rank], rows[pivot_row]);
    rows[rank] = scaled(rows[rank], 1 / rows[rank].at(col));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      const Rational factor = it->second;
      add_scaled(rows[r], rows[rank], -factor);
    }
    pivots.push_back(col);
    ++rank;
  }

  Matrix reduced(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, x] : rows[i]) reduced.set(i, j, x);
  return RrefResult{std::move(reduced), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m)
{
  Echelon e;
  for (const auto& c : m.columns()) e.insert(c, {});
  return e.rank();
}

// Basis of the null space. Columns are inserted left to right; a column that
// reduces to zero yields the kernel vector recorded in its tag.
inline std::vector<SparseVector> kernel_basis(const Matrix& m)
{
  Echelon e;
  std::vector<SparseVector> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto red = e.reduce(m.column(j));
    SparseVector tag = red.tag;
    add_entry(tag, j, Rational(1));
    if (red.residual.empty()) {
      kernel.push_back(std::move(tag));
    } else {
      e.insert(m.column(j), unit_vector(j));
    }
  }
  return kernel;
}

// Basis of the column space made of the leftmost independent columns.
inline std::vector<SparseVector> image_basis(const Matrix& m)
{
  Echelon e;
  std::vector<SparseVector> image;
  for (const auto& c : m.columns())
    if (e.insert(c, {})) image.push_back(c);
  return image;
}

// Solves m x = b for many right hand sides; std::nullopt when b is not in
// the column space.
class ColumnSolver {
 public:
  explicit ColumnSolver(const Matrix& m)
  {
    for (std::size_t j = 0; j < m.cols(); ++j) e_.insert(m.column(j), unit_vector(j));
  }

  std::optional<SparseVector> solve(const SparseVector& b) const
  {
    auto red = e_.reduce(b);
    if (!red.residual.empty()) return std::nullopt;
    // b - residual = -(sum tag) in terms of columns, so x = -tag.
    return scaled(red.tag, Rational(-1));
  }

 private:
  Echelon e_;
};

inline std::optional<SparseVector> solve(const Matrix& m, const SparseVector& b) { return ColumnSolver(m).solve(b); }

inline std::size_t span_dimension(const std::vector<SparseVector>& vectors)
{
  Echelon e;
  for (const auto& v : vectors) e.insert(v, {});
  return e.rank();
}

// Intersection of two spans, as a basis.
inline std::vector<SparseVector> intersection_basis(const std::vector<SparseVector>& a,
                                                    const std::vector<SparseVector>& b)
{
  // Tags record b-coefficients only; a b-vector reducing to zero exhibits a
  // combination of b-vectors lying in span(a).
  Echelon e;
  for (const auto& v : a) e.insert(v, {});
  std::vector<SparseVector> out;
  Echelon seen;
  for (std::size_t j = 0; j < b.size(); ++j) {
    auto red = e.reduce(b[j]);
    if (!red.residual.empty()) {
      e.insert(b[j], unit_vector(j));
      continue;
    }
    SparseVector combination = red.tag;
    add_entry(combination, j, Rational(1));
    SparseVector w;
    for (const auto& [k, y] : combination) add_scaled(w, b[k], y);
    if (!w.empty() && seen.insert(w, {})) out.push_back(std::move(w));
  }
  return out;
}

class OutsideSpanError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Basis of span(sub) / (span(killed) ∩ span(sub)) with representatives taken
// from span(sub), plus the coordinate map on span(sub).
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(const std::vector<SparseVector>& sub, const std::vector<SparseVector>& killed,
              std::size_t ambient_dim)
      : Subquotient(sub, intersection_basis(sub, killed), ambient_dim, Nested{})
  {
    for (const auto& v : killed) check_length(v);
  }

  // Same quotient when span(killed) is already contained in span(sub).
  static Subquotient nested(const std::vector<SparseVector>& sub,
                            const std::vector<SparseVector>& killed, std::size_t ambient_dim)
  {
    return Subquotient(sub, killed, ambient_dim, Nested{});
  }

  std::size_t dimension() const { return reps_.size(); }
  std::size_t ambient_dimension() const { return ambient_dim_; }
  const std::vector<SparseVector>& representatives() const { return reps_; }

  bool in_sub(const SparseVector& v) const { return sub_span_.contains(v); }

  // Coordinates of the class of v; throws when v lies outside span(sub).
  SparseVector reduce(const SparseVector& v) const
  {
    auto red = reducer_.reduce(v);
    if (!red.residual.empty() || !sub_span_.contains(v))
      throw OutsideSpanError("vector does not lie in the subspace of the subquotient");
    return scaled(red.tag, Rational(-1));
  }

  bool is_zero_class(const SparseVector& v) const { return reduce(v).empty(); }

 private:
  struct Nested {};

  Subquotient(const std::vector<SparseVector>& sub, const std::vector<SparseVector>& killed,
              std::size_t ambient_dim, Nested)
      : ambient_dim_(ambient_dim)
  {
    for (const auto& v : sub) check_length(v);
    for (const auto& v : sub) sub_span_.insert(v, {});
    for (const auto& v : killed) reducer_.insert(v, {});
    for (const auto& v : sub) {
      if (reducer_.insert(v, unit_vector(reps_.size()))) reps_.push_back(v);
    }
  }

  void check_length(const SparseVector& v) const
  {
    if (!v.empty() && v.rbegin()->first >= ambient_dim_)
      throw std::invalid_argument("vector longer than the ambient dimension");
  }

  std::size_t ambient_dim_ = 0;
  Echelon sub_span_;
  Echelon reducer_;
  std::vector<SparseVector> reps_;
};

}  // namespace dertower
