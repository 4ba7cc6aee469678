#pragma once

// Test-side reference computations. Nothing here uses the library: words are
// strings of one-letter generator names, matrices are dense.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Poly = std::map<std::string, Q>;  // word -> coefficient

inline int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

inline std::size_t dense_rank(std::vector<std::vector<Q>> a)
{
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Free associative algebra, homological grading, positive degrees.
struct WordAlgebra {
  std::map<char, int> degree;
  std::map<char, Poly> d;

  int deg(const std::string& w) const
  {
    int s = 0;
    for (char c : w) s += degree.at(c);
    return s;
  }

  std::vector<std::string> words(int h) const
  {
    std::vector<std::string> out;
    if (h < 0) return out;
    if (h == 0) return {""};
    for (const auto& [c, k] : degree)
      if (k <= h)
        for (const auto& rest : words(h - k)) out.push_back(std::string(1, c) + rest);
    return out;
  }

  static void add(Poly& p, const std::string& w, const Q& c)
  {
    if (c == 0) return;
    Q& x = p[w];
    x += c;
    if (x == 0) p.erase(w);
  }

  // Derivation of homological degree k given on letters, applied to a word.
  Poly apply(const std::map<char, Poly>& values, int k, const std::string& w) const
  {
    Poly out;
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto it = values.find(w[i]);
      if (it != values.end()) {
        const int s = parity_sign(static_cast<long>(k) * before);
        for (const auto& [m, c] : it->second) add(out, w.substr(0, i) + m + w.substr(i + 1), s * c);
      }
      before += degree.at(w[i]);
    }
    return out;
  }

  Poly differential(const Poly& p) const
  {
    Poly out;
    for (const auto& [w, c] : p)
      for (const auto& [m, x] : apply(d, -1, w)) add(out, m, c * x);
    return out;
  }
};

// Homology dimensions of cone(ad : Q -> Der Q) in homological degrees:
// cone_h = Q_h + Der_{h+1}, where Der_k holds the maps v -> m with
// |m| = |v| + k. D(x) = ad_x - dx and D(f) = [d, f].
inline std::vector<std::size_t> cone_homology(const WordAlgebra& a, int hmin, int hmax)
{
  // basis of cone_h: words of degree h, then pairs (v, m) with |m| - |v| = h + 1
  struct Cell {
    bool algebra;
    char v;
    std::string m;
  };
  auto basis = [&](int h) {
    std::vector<Cell> out;
    for (const auto& w : a.words(h)) out.push_back({true, 0, w});
    for (const auto& [v, k] : a.degree)
      for (const auto& m : a.words(h + 1 + k)) out.push_back({false, v, m});
    return out;
  };
  // The cone differential lowers the homological degree by one.
  auto matrix = [&](int h) {
    const auto src = basis(h);
    const auto dst = basis(h - 1);
    std::vector<std::vector<Q>> m(dst.size(), std::vector<Q>(src.size()));
    auto index = [&](bool alg, char v, const std::string& w) -> std::size_t {
      for (std::size_t i = 0; i < dst.size(); ++i)
        if (dst[i].algebra == alg && dst[i].m == w && (alg || dst[i].v == v)) return i;
      throw std::logic_error("oracle basis lookup failed");
    };
    for (std::size_t j = 0; j < src.size(); ++j) {
      const Cell& c = src[j];
      if (c.algebra) {
        // -dx
        for (const auto& [w, x] : a.differential(Poly{{c.m, Q(1)}})) m[index(true, 0, w)][j] -= x;
        // ad_x(v) = x v - (-1)^{|x||v|} v x, a derivation of homological degree |x|
        const int hx = a.deg(c.m);
        for (const auto& [v, k] : a.degree) {
          Poly val;
          WordAlgebra::add(val, c.m + std::string(1, v), Q(1));
          WordAlgebra::add(val, std::string(1, v) + c.m, Q(-parity_sign(static_cast<long>(hx) * k)));
          for (const auto& [w, x] : val) m[index(false, v, w)][j] += x;
        }
      } else {
        // [d, f] = d f - (-1)^{|f|} f d with |f| = |m| - |v|
        const int k = a.deg(c.m) - a.degree.at(c.v);
        const std::map<char, Poly> f{{c.v, Poly{{c.m, Q(1)}}}};
        for (const auto& [w, k2] : a.degree) {
          Poly val;
          if (w == c.v)
            for (const auto& [x, y] : a.differential(Poly{{c.m, Q(1)}})) WordAlgebra::add(val, x, y);
          auto dit = a.d.find(w);
          if (dit != a.d.end())
            for (const auto& [word, coeff] : dit->second)
              for (const auto& [x, y] : a.apply(f, k, word))
                WordAlgebra::add(val, x, -parity_sign(k) * coeff * y);
          for (const auto& [x, y] : val) m[index(false, w, x)][j] += y;
        }
      }
    }
    return std::make_pair(m, src.size());
  };
  std::vector<std::size_t> out;
  for (int h = hmin; h <= hmax; ++h) {
    const auto [out_m, dim] = matrix(h);
    const auto [in_m, dim_up] = matrix(h + 1);
    (void)dim_up;
    out.push_back(dim - dense_rank(out_m) - dense_rank(in_m));
  }
  return out;
}

}  // namespace oracle
