#pragma once

// Spectral sequence of a filtered complex, computed two ways.
//
// Filtered route: Z_r^{s,n} = {x in F^s C^n : dx in F^{s+r}} and
//   E_r^{s,n} = Z_r^{s,n} / (Z_{r-1}^{s+1,n} + d Z_{r-1}^{s-r+1,n-1}),
// with d_r induced by d. Positions are (s, n) with n the total degree;
// d_r : E_r^{s,n} -> E_r^{s+r,n+1}.
//
// Exact couple route: E^{s,n} = H^n(gr^s), D^{s,n} = H^n(C / F^{s+1}) with
// k : E^{s,n} -> D^{s,n}, i : D^{s,n} -> D^{s-1,n}, j : D^{s-1,n} -> E^{s,n+1},
// Z_r = k^{-1}(im i^{r-1}), B_r = j(ker i^{r-1}) and d_r = j i^{-(r-1)} k.
//
// Neither class is thread-safe: results are cached on first use.

#include "dertower/filtered.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace dertower {

namespace detail {

// Restriction of d_n to the given columns and rows.
inline Matrix submatrix(const Matrix& d, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
  std::map<std::size_t, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
  Matrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseVector col;
    for (const auto& [i, x] : d.column(cols[j])) {
      auto it = row_index.find(i);
      if (it != row_index.end()) col.emplace(it->second, x);
    }
    out.set_column(j, std::move(col));
  }
  return out;
}

inline SparseVector lift(const SparseVector& v, const std::vector<std::size_t>& coords)
{
  SparseVector out;
  for (const auto& [i, x] : v) out.emplace(coords[i], x);
  return out;
}

inline SparseVector project(const SparseVector& v, const FilteredComplex& fc, int n, int lo_weight, int hi_weight)
{
  SparseVector out;
  for (const auto& [i, x] : v) {
    const int w = fc.weight(n, i);
    if (w >= lo_weight && w <= hi_weight) out.emplace(i, x);
  }
  return out;
}

inline std::vector<SparseVector> independent(const std::vector<SparseVector>& vs)
{
  Echelon e;
  std::vector<SparseVector> out;
  for (const auto& v : vs)
    if (e.insert(v, {})) out.push_back(v);
  return out;
}

inline std::vector<std::size_t> weight_band(const FilteredComplex& fc, int n, int lo_weight, int hi_weight)
{
  std::vector<std::size_t> out;
  if (n < fc.lo() || n > fc.hi()) return out;
  for (std::size_t i = 0; i < fc.dimension(n); ++i) {
    const int w = fc.weight(n, i);
    if (w >= lo_weight && w <= hi_weight) out.push_back(i);
  }
  return out;
}

constexpr int kUnbounded = 1 << 28;

}  // namespace detail

class SpectralSequence {
 public:
  // Reports positions with total degree in [nlo, nhi]; the complex must be
  // materialised on [nlo - 1, nhi + 2].
  SpectralSequence(const FilteredComplex& fc, int nlo, int nhi) : fc_(fc), nlo_(nlo), nhi_(nhi)
  {
    if (nlo - 1 < fc.lo() || nhi + 2 > fc.hi())
      throw StructuralError("spectral sequence window exceeds the materialised complex");
  }

  const FilteredComplex& complex() const { return fc_; }
  int nlo() const { return nlo_; }
  int nhi() const { return nhi_; }
  int smin() const { return fc_.smin(); }
  int smax() const { return fc_.smax(); }
  // E_r = E_infinity for every r >= stable_page().
  int stable_page() const { return smax() - smin() + 1; }

  // Z_r^{s,n} in ambient coordinates; r <= 0 gives F^s.
  const std::vector<SparseVector>& cycles(int r, int s, int n)
  {
    // dx in F^{smax+1} means dx = 0, so larger r give the same space
    r = std::max(0, std::min(r, smax() + 1 - s));
    if (s > smax()) s = smax() + 1;
    const auto key = std::make_tuple(r, s, n);
    if (auto it = cycles_.find(key); it != cycles_.end()) return it->second;
    std::vector<SparseVector> out;
    const auto cols = fc_.filtration_indices(n, s);
    if (r == 0) {
      for (std::size_t c : cols) out.push_back(unit_vector(c));
    } else if (!cols.empty()) {
      const auto rows = detail::weight_band(fc_, n + 1, -detail::kUnbounded, s + r - 1);
      const Matrix sub = detail::submatrix(fc_.complex().differential(n), rows, cols);
      for (const auto& v : kernel_basis(sub)) out.push_back(detail::lift(v, cols));
    }
    return cycles_.emplace(key, std::move(out)).first->second;
  }

  const Subquotient& entry(int r, int s, int n)
  {
    if (r < 1) throw std::invalid_argument("page index must be at least 1");
    r = std::min(r, stable_page() + 1);
    const auto key = std::make_tuple(r, s, n);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    std::vector<SparseVector> sub, killed;
    if (s >= smin() && s <= smax()) {
      sub = cycles(r, s, n);
      killed = cycles(r - 1, s + 1, n);
      const Matrix d = fc_.complex().differential(n - 1);
      for (const auto& y : cycles(r - 1, s - r + 1, n - 1)) {
        SparseVector dy = d.apply(y);
        if (!dy.empty()) killed.push_back(std::move(dy));
      }
    }
    return entries_.emplace(key, Subquotient::nested(sub, killed, fc_.dimension(n))).first->second;
  }

  std::size_t dimension(int r, int s, int n) { return entry(r, s, n).dimension(); }

  // d_r : E_r^{s,n} -> E_r^{s+r,n+1} in representative bases.
  Matrix differential(int r, int s, int n)
  {
    const Subquotient& src = entry(r, s, n);
    const Subquotient& dst = entry(r, s + r, n + 1);
    const Matrix d = fc_.complex().differential(n);
    Matrix out(dst.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j) {
      out.set_column(j, dst.reduce(d.apply(src.representatives()[j])));
    }
    return out;
  }

  // (F^s ∩ ker d) / (F^{s+1} ∩ ker d + F^s ∩ im d).
  const Subquotient& e_infinity(int s, int n)
  {
    const auto key = std::make_pair(s, n);
    if (auto it = infinity_.find(key); it != infinity_.end()) return it->second;
    std::vector<SparseVector> sub, killed;
    if (s >= smin() && s <= smax()) {
      sub = filtered_cocycles(s, n);
      killed = filtered_cocycles(s + 1, n);
      std::vector<SparseVector> fs;
      for (std::size_t c : fc_.filtration_indices(n, s)) fs.push_back(unit_vector(c));
      const auto boundaries = image_basis(fc_.complex().differential(n - 1));
      for (auto& v : intersection_basis(fs, boundaries)) killed.push_back(std::move(v));
    }
    return infinity_.emplace(key, Subquotient::nested(sub, killed, fc_.dimension(n))).first->second;
  }

  // dim H^n of the total complex, computed directly.
  std::size_t total_dimension(int n) { return homology(fc_.complex(), n).dimension; }

 private:
  std::vector<SparseVector> filtered_cocycles(int s, int n)
  {
    const auto cols = fc_.filtration_indices(n, s);
    std::vector<SparseVector> out;
    if (cols.empty()) return out;
    const auto rows = detail::weight_band(fc_, n + 1, -detail::kUnbounded, detail::kUnbounded);
    const Matrix sub = detail::submatrix(fc_.complex().differential(n), rows, cols);
    for (const auto& v : kernel_basis(sub)) out.push_back(detail::lift(v, cols));
    return out;
  }

  const FilteredComplex& fc_;
  int nlo_;
  int nhi_;
  std::map<std::tuple<int, int, int>, std::vector<SparseVector>> cycles_;
  std::map<std::tuple<int, int, int>, Subquotient> entries_;
  std::map<std::pair<int, int>, Subquotient> infinity_;
};

class ExactCouple {
 public:
  ExactCouple(const FilteredComplex& fc, int nlo, int nhi) : fc_(fc), nlo_(nlo), nhi_(nhi)
  {
    if (nlo - 1 < fc.lo() || nhi + 2 > fc.hi())
      throw StructuralError("exact couple window exceeds the materialised complex");
  }

  int smin() const { return fc_.smin(); }
  int smax() const { return fc_.smax(); }

  // E^{s,n} = H^n(gr^s), ambient coordinates supported in weight s.
  const Subquotient& e1(int s, int n) { return band_homology(e1_, s, s, n); }

  // D^{s,n} = H^n(C / F^{s+1}), ambient coordinates supported in weights <= s.
  const Subquotient& d_term(int s, int n)
  {
    s = std::clamp(s, smin() - 1, smax());
    return band_homology(d_, -detail::kUnbounded, s, n);
  }

  const Matrix& k(int s, int n)
  {
    if (auto it = k_.find({s, n}); it != k_.end()) return it->second;
    const Subquotient& src = e1(s, n);
    const Subquotient& dst = d_term(s, n);
    Matrix out(dst.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j) out.set_column(j, dst.reduce(src.representatives()[j]));
    return k_.emplace(std::make_pair(s, n), std::move(out)).first->second;
  }

  // D^{s,n} -> D^{s-1,n}
  const Matrix& i(int s, int n)
  {
    if (auto it = i_.find({s, n}); it != i_.end()) return it->second;
    const Subquotient& src = d_term(s, n);
    const Subquotient& dst = d_term(s - 1, n);
    Matrix out(dst.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j)
      out.set_column(j, dst.reduce(detail::project(src.representatives()[j], fc_, n, -detail::kUnbounded, s - 1)));
    return i_.emplace(std::make_pair(s, n), std::move(out)).first->second;
  }

  // D^{s,n} -> D^{s-m,n}
  const Matrix& i_power(int s, int n, int m)
  {
    const auto key = std::make_tuple(s, n, m);
    if (auto it = ipow_.find(key); it != ipow_.end()) return it->second;
    Matrix out = m == 0 ? Matrix::identity(d_term(s, n).dimension()) : i(s - m + 1, n) * i_power(s, n, m - 1);
    return ipow_.emplace(key, std::move(out)).first->second;
  }

  // D^{s-1,n} -> E^{s,n+1}: apply d and keep the weight s part.
  const Matrix& j(int s, int n)
  {
    if (auto it = j_.find({s, n}); it != j_.end()) return it->second;
    const Subquotient& src = d_term(s - 1, n);
    const Subquotient& dst = e1(s, n + 1);
    const Matrix d = fc_.complex().differential(n);
    Matrix out(dst.dimension(), src.dimension());
    for (std::size_t c = 0; c < src.dimension(); ++c)
      out.set_column(c, dst.reduce(detail::project(d.apply(src.representatives()[c]), fc_, n + 1, s, s)));
    return j_.emplace(std::make_pair(s, n), std::move(out)).first->second;
  }

  // E_r^{s,n} as Z_r / B_r inside E_1 coordinates.
  const Subquotient& entry(int r, int s, int n)
  {
    if (r < 1) throw std::invalid_argument("page index must be at least 1");
    const auto key = std::make_tuple(r, s, n);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    const std::size_t dim = e1(s, n).dimension();
    // Z_r: e with k(e) in im i^{r-1}
    std::vector<SparseVector> z;
    {
      const Matrix kk = k(s, n);
      const Matrix ii = i_power(s + r - 1, n, r - 1);
      Matrix block(kk.rows(), kk.cols() + ii.cols());
      for (std::size_t c = 0; c < kk.cols(); ++c) block.set_column(c, kk.column(c));
      for (std::size_t c = 0; c < ii.cols(); ++c) block.set_column(kk.cols() + c, scaled(ii.column(c), Rational(-1)));
      std::vector<SparseVector> parts;
      for (const auto& v : kernel_basis(block)) {
        SparseVector e;
        for (const auto& [idx, x] : v)
          if (idx < dim) e.emplace(idx, x);
        if (!e.empty()) parts.push_back(std::move(e));
      }
      z = detail::independent(parts);
    }
    // B_r: j(ker i^{r-1} on D^{s-1,n-1})
    std::vector<SparseVector> b;
    {
      const Matrix ii = i_power(s - 1, n - 1, r - 1);
      const Matrix jj = j(s, n - 1);
      std::vector<SparseVector> images;
      for (const auto& v : kernel_basis(ii)) images.push_back(jj.apply(v));
      b = detail::independent(images);
    }
    return entries_.emplace(key, Subquotient::nested(z, b, dim)).first->second;
  }

  std::size_t dimension(int r, int s, int n) { return entry(r, s, n).dimension(); }

  Matrix differential(int r, int s, int n)
  {
    const Subquotient& src = entry(r, s, n);
    const Subquotient& dst = entry(r, s + r, n + 1);
    const Matrix kk = k(s, n);
    const Matrix ii = i_power(s + r - 1, n, r - 1);
    const Matrix jj = j(s + r, n);
    Matrix out(dst.dimension(), src.dimension());
    if (src.dimension() == 0) return out;
    const ColumnSolver lift(ii);
    for (std::size_t c = 0; c < src.dimension(); ++c) {
      const auto y = lift.solve(kk.apply(src.representatives()[c]));
      if (!y) throw StructuralError("exact couple: class does not lift along i");
      out.set_column(c, dst.reduce(jj.apply(*y)));
    }
    return out;
  }

  // Coordinates in E_r^{s,n} (couple basis) of a filtered-route representative.
  SparseVector align(int r, int s, int n, const SparseVector& filtered_rep)
  {
    const SparseVector leading = detail::project(filtered_rep, fc_, n, s, s);
    return entry(r, s, n).reduce(e1(s, n).reduce(leading));
  }

 private:
  const Subquotient& band_homology(std::map<std::pair<int, int>, Subquotient>& cache, int lo_w, int hi_w, int n)
  {
    const auto key = std::make_pair(hi_w, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const auto cols = detail::weight_band(fc_, n, lo_w, hi_w);
    const auto rows = detail::weight_band(fc_, n + 1, lo_w, hi_w);
    const auto prev = detail::weight_band(fc_, n - 1, lo_w, hi_w);
    std::vector<SparseVector> cycles, boundaries;
    if (!cols.empty()) {
      for (const auto& v : kernel_basis(detail::submatrix(fc_.complex().differential(n), rows, cols)))
        cycles.push_back(detail::lift(v, cols));
      for (const auto& v : image_basis(detail::submatrix(fc_.complex().differential(n - 1), cols, prev)))
        boundaries.push_back(detail::lift(v, cols));
    }
    return cache.emplace(key, Subquotient::nested(cycles, boundaries, fc_.dimension(n))).first->second;
  }

  const FilteredComplex& fc_;
  int nlo_;
  int nhi_;
  std::map<std::pair<int, int>, Subquotient> e1_;
  std::map<std::pair<int, int>, Subquotient> d_;
  std::map<std::tuple<int, int, int>, Subquotient> entries_;
  std::map<std::pair<int, int>, Matrix> k_, i_, j_;
  std::map<std::tuple<int, int, int>, Matrix> ipow_;
};

// Change of basis from filtered-route representatives to couple coordinates.
inline Matrix alignment(SpectralSequence& ss, ExactCouple& ec, int r, int s, int n)
{
  const Subquotient& e = ss.entry(r, s, n);
  Matrix p(ec.dimension(r, s, n), e.dimension());
  for (std::size_t c = 0; c < e.dimension(); ++c) p.set_column(c, ec.align(r, s, n, e.representatives()[c]));
  return p;
}

// --- reports ------------------------------------------------------------------------

struct AssemblyRow {
  int n = 0;
  std::size_t assembled = 0;  // sum over s of dim E_infinity^{s,n}
  std::size_t direct = 0;     // dim H^n of the total complex
  bool stable_page_agrees = true;  // E_r at the stable page has the same dimensions
};

inline std::vector<AssemblyRow> e_infinity_and_compare(SpectralSequence& ss)
{
  std::vector<AssemblyRow> rows;
  for (int n = ss.nlo(); n <= ss.nhi(); ++n) {
    AssemblyRow row{n, 0, ss.total_dimension(n), true};
    for (int s = ss.smin(); s <= ss.smax(); ++s) {
      const std::size_t e = ss.e_infinity(s, n).dimension();
      row.assembled += e;
      if (ss.dimension(ss.stable_page(), s, n) != e) row.stable_page_agrees = false;
    }
    rows.push_back(row);
  }
  return rows;
}

// d_r d_r = 0 and dim E_{r+1} = dim ker d_r - dim im d_r for r <= rmax.
// Returns a description of every violation.
inline std::vector<std::string> page_invariant_failures(SpectralSequence& ss, int rmax)
{
  std::vector<std::string> bad;
  auto where = [](int r, int s, int n) {
    return "r=" + std::to_string(r) + " s=" + std::to_string(s) + " n=" + std::to_string(n);
  };
  for (int r = 1; r <= rmax; ++r) {
    for (int n = ss.nlo(); n <= ss.nhi(); ++n) {
      for (int s = ss.smin(); s <= ss.smax(); ++s) {
        const Matrix out = ss.differential(r, s, n);
        if (n + 1 <= ss.nhi() && !(ss.differential(r, s + r, n + 1) * out).is_zero_matrix())
          bad.push_back("d_r squared nonzero at " + where(r, s, n));
        if (n - 1 >= ss.nlo()) {
          const Matrix in = ss.differential(r, s - r, n - 1);
          const std::size_t expected = ss.dimension(r, s, n) - rank(out) - rank(in);
          if (ss.dimension(r + 1, s, n) != expected) bad.push_back("E_{r+1} is not H(E_r) at " + where(r, s, n));
        }
      }
    }
  }
  return bad;
}

// Page dimensions and aligned differentials of the two routes, r <= rmax.
inline std::vector<std::string> route_mismatches(SpectralSequence& ss, ExactCouple& ec, int rmax)
{
  std::vector<std::string> bad;
  for (int r = 1; r <= rmax; ++r) {
    for (int n = ss.nlo(); n <= ss.nhi(); ++n) {
      for (int s = ss.smin(); s <= ss.smax(); ++s) {
        const std::string where = " r=" + std::to_string(r) + " s=" + std::to_string(s) + " n=" + std::to_string(n);
        if (ss.dimension(r, s, n) != ec.dimension(r, s, n)) {
          bad.push_back("dimension" + where);
          continue;
        }
        const Matrix p = alignment(ss, ec, r, s, n);
        if (rank(p) != p.cols()) {
          bad.push_back("alignment not invertible" + where);
          continue;
        }
        if (n + 1 > ss.nhi()) continue;
        if (ss.dimension(r, s + r, n + 1) != ec.dimension(r, s + r, n + 1)) continue;  // reported at its own position
        const Matrix q = alignment(ss, ec, r, s + r, n + 1);
        if (!(ec.differential(r, s, n) * p == q * ss.differential(r, s, n))) bad.push_back("differential" + where);
      }
    }
  }
  return bad;
}

// --- lifts ------------------------------------------------------------------------

struct LiftReport {
  bool survives = false;
  int obstruction_page = 0;     // page q with d_q nonzero on the class
  SparseVector target;          // d of the last lift, representing d_q of the class
  SparseVector lift;            // last representative; a cocycle when it survives
};

// Starting from x in Z_1^{s,n}, repeatedly corrects x by elements of
// Z_{q-1}^{s+1,n} so that it lies in Z_{q+1}^{s,n}; stops at the first page
// where no correction exists.
inline LiftReport differential_via_lift(SpectralSequence& ss, int s, int n, SparseVector x)
{
  const FilteredComplex& fc = ss.complex();
  const Matrix d = fc.complex().differential(n);
  LiftReport report;
  for (int q = 1;; ++q) {
    const SparseVector dx = d.apply(x);
    if (dx.empty()) {
      report.survives = true;
      report.lift = std::move(x);
      return report;
    }
    if (s + q > ss.smax()) throw StructuralError("lift search: dx lies outside the filtration range");
    const int w = fc.filtration_of(n + 1, dx);
    if (w > s + q) continue;  // already in Z_{q+1}
    const auto& correctors = ss.cycles(q - 1, s + 1, n);
    const auto band = detail::weight_band(fc, n + 1, s + q, s + q);
    Matrix m(band.size(), correctors.size());
    for (std::size_t c = 0; c < correctors.size(); ++c) {
      const SparseVector da = detail::project(d.apply(correctors[c]), fc, n + 1, s + q, s + q);
      SparseVector local;
      for (const auto& [i, v] : da)
        local.emplace(static_cast<std::size_t>(std::lower_bound(band.begin(), band.end(), i) - band.begin()), v);
      m.set_column(c, std::move(local));
    }
    SparseVector rhs;
    for (const auto& [i, v] : detail::project(dx, fc, n + 1, s + q, s + q))
      rhs.emplace(static_cast<std::size_t>(std::lower_bound(band.begin(), band.end(), i) - band.begin()), v);
    const auto a = solve(m, rhs);
    if (!a) {
      report.obstruction_page = q;
      report.target = dx;
      report.lift = std::move(x);
      return report;
    }
    for (const auto& [c, v] : *a) add_scaled(x, correctors[c], -v);
  }
}

// --- functoriality ----------------------------------------------------------------

// Matrix of E_r^{s,n}(source) -> E_r^{s,n}(target) induced by a filtered chain map.
inline Matrix induced_page_map(SpectralSequence& source, SpectralSequence& target, const FilteredMap& f, int r, int s,
                               int n)
{
  const Subquotient& src = source.entry(r, s, n);
  const Subquotient& dst = target.entry(r, s, n);
  const Matrix& fn = f.components.at(n);
  Matrix out(dst.dimension(), src.dimension());
  for (std::size_t c = 0; c < src.dimension(); ++c) out.set_column(c, dst.reduce(fn.apply(src.representatives()[c])));
  return out;
}

}  // namespace dertower
