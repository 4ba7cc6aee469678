#pragma once

// Quasi-free dg algebras: free associative (word) or free graded-commutative
// (polynomial on even, exterior on odd generators) algebras with a
// differential given on generators.
//
// Sign convention: Koszul rule, operators act from the left. A derivation F of
// degree p satisfies F(ab) = F(a) b + (-1)^{p|a|} a F(b), and the graded
// commutator is [a,b] = ab - (-1)^{|a||b|} ba. All signs use internal
// (cohomological) degrees; parity is the same in both gradings.

#include "dertower/graded.hpp"

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dertower {

enum class Flavor { associative, commutative };

inline const char* to_string(Flavor f) { return f == Flavor::associative ? "associative" : "commutative"; }

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Basis enumeration would not terminate (infinitely many monomials per degree).
class RefusalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Generator {
  std::string name;
  int degree = 0;  // native grading of the algebra
  int stage = 0;
  bool base = false;
  bool auxiliary = false;
};

// Letters are generator indices. Graded-commutative monomials keep their
// letters sorted (repetition encodes exponents); words are stored verbatim.
struct Monomial {
  std::vector<int> letters;
  auto operator<=>(const Monomial&) const = default;
  bool is_unit() const { return letters.empty(); }
};

class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  AlgebraElement() = default;
  explicit AlgebraElement(std::uint64_t owner) : owner_(owner) {}
  AlgebraElement(std::uint64_t owner, Terms terms) : owner_(owner), terms_(std::move(terms))
  {
    prune();
  }

  std::uint64_t owner() const { return owner_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const
  {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c)
  {
    if (dertower::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (dertower::is_zero(it->second)) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& other)
  {
    adopt(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& other)
  {
    adopt(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& c)
  {
    if (dertower::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }

  // Equality compares terms only; a zero element equals zero of any algebra.
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  void adopt(const AlgebraElement& other)
  {
    if (owner_ == 0) {
      owner_ = other.owner_;
    } else if (other.owner_ != 0 && other.owner_ != owner_ && !other.is_zero()) {
      throw StructuralError("operands belong to different algebras");
    }
  }
  void prune()
  {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = dertower::is_zero(it->second) ? terms_.erase(it) : std::next(it);
  }

  std::uint64_t owner_ = 0;
  Terms terms_;
};

class FreeDgAlgebra;

// Algebra map given by generator images. Identity when images are empty and
// source == target.
class AlgebraMorphism {
 public:
  AlgebraMorphism() = default;
  AlgebraMorphism(std::shared_ptr<const FreeDgAlgebra> source, std::shared_ptr<const FreeDgAlgebra> target,
                  std::vector<AlgebraElement> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
  {
  }

  static AlgebraMorphism identity(std::shared_ptr<const FreeDgAlgebra> algebra);

  const FreeDgAlgebra& source() const { return *source_; }
  const FreeDgAlgebra& target() const { return *target_; }
  std::shared_ptr<const FreeDgAlgebra> source_ptr() const { return source_; }
  std::shared_ptr<const FreeDgAlgebra> target_ptr() const { return target_; }
  bool is_identity() const { return identity_; }

  const AlgebraElement& image(int generator) const { return images_.at(static_cast<std::size_t>(generator)); }

  AlgebraElement apply(const AlgebraElement& a) const;
  AlgebraElement apply(const Monomial& m) const;

  // u(dv) == d(u(v)) for every generator v; returns offending generator names.
  std::vector<std::string> commutation_failures() const;

 private:
  std::shared_ptr<const FreeDgAlgebra> source_;
  std::shared_ptr<const FreeDgAlgebra> target_;
  std::vector<AlgebraElement> images_;
  bool identity_ = false;
};

class FreeDgAlgebra {
 public:
  FreeDgAlgebra(Flavor flavor, Grading grading, std::vector<Generator> generators)
      : flavor_(flavor), grading_(grading), id_(next_id())
  {
    std::stable_sort(generators.begin(), generators.end(), [](const Generator& a, const Generator& b) {
      return std::tie(a.degree, a.name) < std::tie(b.degree, b.name);
    });
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].name.empty()) throw StructuralError("generator without a name");
      if (!index_.emplace(generators[i].name, static_cast<int>(i)).second)
        throw StructuralError("duplicate generator name: " + generators[i].name);
      if (generators[i].degree == 0 && !generators[i].auxiliary)
        throw StructuralError("generator " + generators[i].name + " has degree 0");
    }
    generators_ = std::move(generators);
    differential_.assign(generators_.size(), AlgebraElement(id_));
  }

  FreeDgAlgebra(const FreeDgAlgebra& other)
      : flavor_(other.flavor_),
        grading_(other.grading_),
        id_(other.id_),
        generators_(other.generators_),
        index_(other.index_),
        differential_(other.differential_),
        name_(other.name_),
        description_(other.description_)
  {
  }
  FreeDgAlgebra& operator=(const FreeDgAlgebra&) = delete;

  Flavor flavor() const { return flavor_; }
  Grading grading() const { return grading_; }
  std::uint64_t id() const { return id_; }
  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }
  void set_metadata(std::string name, std::string description)
  {
    name_ = std::move(name);
    description_ = std::move(description);
  }

  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }
  int index_of(const std::string& name) const
  {
    auto it = index_.find(name);
    if (it == index_.end()) throw StructuralError("unknown generator: " + name);
    return it->second;
  }
  bool has_generator(const std::string& name) const { return index_.count(name) > 0; }

  // Cohomological degree used for every sign and degree computation.
  int internal_degree(int g) const { return to_internal_degree(grading_, generator(g).degree); }
  int internal_degree(const Monomial& m) const
  {
    int d = 0;
    for (int letter : m.letters) d += internal_degree(letter);
    return d;
  }
  int native_degree(const Monomial& m) const { return to_native_degree(grading_, internal_degree(m)); }

  int max_stage() const
  {
    int s = 0;
    for (const auto& g : generators_) s = std::max(s, g.stage);
    return s;
  }

  void set_differential(int generator, AlgebraElement value)
  {
    if (value.owner() != 0 && value.owner() != id_ && !value.is_zero())
      throw StructuralError("differential value belongs to another algebra");
    differential_.at(static_cast<std::size_t>(generator)) = AlgebraElement(id_, value.terms());
  }
  void set_differential(const std::string& name, AlgebraElement value) { set_differential(index_of(name), std::move(value)); }
  const AlgebraElement& differential(int generator) const { return differential_.at(static_cast<std::size_t>(generator)); }

  // --- elements -----------------------------------------------------------

  AlgebraElement zero() const { return AlgebraElement(id_); }
  AlgebraElement one() const { return term(Monomial{}, Rational(1)); }
  AlgebraElement gen(int i) const { return term(Monomial{{i}}, Rational(1)); }
  AlgebraElement gen(const std::string& name) const { return gen(index_of(name)); }
  AlgebraElement term(const Monomial& m, const Rational& c) const
  {
    AlgebraElement e(id_);
    e.add_term(m, c);
    return e;
  }

  // Canonical monomial (sorted, with sign) from an arbitrary ordered product
  // of letters. Returns nullopt when the product vanishes.
  std::optional<std::pair<int, Monomial>> normalize(const std::vector<int>& letters) const
  {
    if (flavor_ == Flavor::associative) return std::make_pair(1, Monomial{letters});
    std::vector<int> sorted = letters;
    int sign = 1;
    // insertion sort counting transpositions of odd letters
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      for (std::size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
        if (is_odd(sorted[j - 1]) && is_odd(sorted[j])) sign = -sign;
        std::swap(sorted[j - 1], sorted[j]);
      }
    }
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1] && is_odd(sorted[i])) return std::nullopt;
    return std::make_pair(sign, Monomial{std::move(sorted)});
  }

  std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b) const
  {
    if (flavor_ == Flavor::associative) {
      Monomial out = a;
      out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
      return std::make_pair(1, std::move(out));
    }
    int sign = 1;
    for (int y : b.letters) {
      if (!is_odd(y)) continue;
      for (int x : a.letters) {
        if (x == y) return std::nullopt;
        if (x > y && is_odd(x)) sign = -sign;
      }
    }
    Monomial out;
    std::merge(a.letters.begin(), a.letters.end(), b.letters.begin(), b.letters.end(),
               std::back_inserter(out.letters));
    return std::make_pair(sign, std::move(out));
  }

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const
  {
    check_owner(a);
    check_owner(b);
    AlgebraElement out(id_);
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) {
        auto prod = multiply(ma, mb);
        if (prod) out.add_term(prod->second, prod->first * ca * cb);
      }
    return out;
  }

  AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) const
  {
    AlgebraElement out = multiply(a, b);
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms()) {
        auto prod = multiply(mb, ma);
        if (!prod) continue;
        const long parity = static_cast<long>(internal_degree(ma)) * internal_degree(mb);
        out.add_term(prod->second, -sign_of_parity(parity) * prod->first * ca * cb);
      }
    return out;
  }

  AlgebraElement power(const AlgebraElement& a, int exponent) const
  {
    AlgebraElement out = one();
    for (int i = 0; i < exponent; ++i) out = multiply(out, a);
    return out;
  }

  // Internal degree of a homogeneous element; nullopt for zero or
  // inhomogeneous elements.
  std::optional<int> homogeneous_degree(const AlgebraElement& a) const
  {
    std::optional<int> deg;
    for (const auto& [m, c] : a.terms()) {
      const int d = internal_degree(m);
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  AlgebraElement apply_differential(const AlgebraElement& a) const;

  // --- bases ----------------------------------------------------------------

  // Monomials of the given internal degree, ordered lexicographically.
  const std::vector<Monomial>& basis_internal(int degree) const
  {
    check_enumerable();
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(degree);
    if (it != cache_->bases.end()) return it->second;
    std::vector<Monomial> out;
    const int dir = grading_ == Grading::cohomological ? 1 : -1;
    if (degree * dir >= 0) {
      std::vector<int> current;
      if (flavor_ == Flavor::associative)
        enumerate_words(degree * dir, dir, current, out);
      else
        enumerate_commutative(degree * dir, dir, 0, current, out);
    }
    std::sort(out.begin(), out.end());
    return cache_->bases.emplace(degree, std::move(out)).first->second;
  }

  const std::vector<Monomial>& basis_in_degree(int native) const { return basis_internal(to_internal_degree(grading_, native)); }

  bool enumerable() const
  {
    const int dir = grading_ == Grading::cohomological ? 1 : -1;
    return std::all_of(generators_.begin(), generators_.end(), [&](const Generator& g) {
      return !g.auxiliary && to_internal_degree(grading_, g.degree) * dir > 0;
    });
  }

  // --- printing -------------------------------------------------------------

  std::string to_string(const Monomial& m) const
  {
    if (m.letters.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.letters.size();) {
      std::size_t j = i;
      while (j < m.letters.size() && m.letters[j] == m.letters[i]) ++j;
      if (!out.empty()) out += ' ';
      out += generator(m.letters[i]).name;
      if (j - i > 1) out += '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  std::string to_string(const AlgebraElement& a) const
  {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
      const bool negative = sgn(c) < 0;
      const Rational mag = abs(c);
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      if (m.letters.empty())
        out += dertower::to_string(mag);
      else if (mag == 1)
        out += to_string(m);
      else
        out += dertower::to_string(mag) + " * " + to_string(m);
    }
    return out;
  }

  // Linear part of d on generator v, as coefficients on generators.
  std::map<int, Rational> linear_part(int generator) const
  {
    std::map<int, Rational> out;
    for (const auto& [m, c] : differential(generator).terms())
      if (m.letters.size() == 1) out.emplace(m.letters.front(), c);
    return out;
  }

  void check_owner(const AlgebraElement& a) const
  {
    if (a.owner() != 0 && a.owner() != id_ && !a.is_zero())
      throw StructuralError("element belongs to a different algebra");
  }

 private:
  static std::uint64_t next_id()
  {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
  }

  bool is_odd(int g) const { return internal_degree(g) % 2 != 0; }

  void check_enumerable() const
  {
    const int dir = grading_ == Grading::cohomological ? 1 : -1;
    for (const auto& g : generators_) {
      if (g.auxiliary)
        throw RefusalError("basis enumeration refused: auxiliary generator " + g.name +
                           " makes the algebra infinite in each degree");
      if (to_internal_degree(grading_, g.degree) * dir <= 0)
        throw RefusalError("basis enumeration refused: generator " + g.name + " has degree " +
                           std::to_string(g.degree));
    }
  }

  void enumerate_words(int remaining, int dir, std::vector<int>& current, std::vector<Monomial>& out) const
  {
    if (remaining == 0) {
      out.push_back(Monomial{current});
      return;
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const int d = internal_degree(static_cast<int>(i)) * dir;
      if (d > remaining) continue;
      current.push_back(static_cast<int>(i));
      enumerate_words(remaining - d, dir, current, out);
      current.pop_back();
    }
  }

  void enumerate_commutative(int remaining, int dir, std::size_t from, std::vector<int>& current,
                             std::vector<Monomial>& out) const
  {
    if (remaining == 0) {
      out.push_back(Monomial{current});
      return;
    }
    for (std::size_t i = from; i < generators_.size(); ++i) {
      const int d = internal_degree(static_cast<int>(i)) * dir;
      if (d > remaining) continue;
      const int max_exp = is_odd(static_cast<int>(i)) ? 1 : remaining / d;
      for (int e = 1; e <= max_exp; ++e) {
        for (int k = 0; k < e; ++k) current.push_back(static_cast<int>(i));
        enumerate_commutative(remaining - e * d, dir, i + 1, current, out);
        for (int k = 0; k < e; ++k) current.pop_back();
      }
    }
  }

  struct Cache {
    std::mutex mutex;
    std::map<int, std::vector<Monomial>> bases;
  };

  Flavor flavor_;
  Grading grading_;
  std::uint64_t id_;
  std::vector<Generator> generators_;
  std::map<std::string, int> index_;
  std::vector<AlgebraElement> differential_;
  std::string name_;
  std::string description_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Value of the derivation determined by `value` on generators (zero where
// `value` returns null), of internal degree `degree`, along the coefficient
// map u, applied to an element of u's source:
//   F(x1...xk) = sum_i (-1)^{p(|x1|+...+|x_{i-1}|)} u(x1..x_{i-1}) F(x_i) u(x_{i+1}..xk).
inline AlgebraElement extend_as_derivation(int degree,
                                           const std::function<const AlgebraElement*(int)>& value,
                                           const AlgebraMorphism& u, const AlgebraElement& a)
{
  const FreeDgAlgebra& source = u.source();
  const FreeDgAlgebra& target = u.target();
  source.check_owner(a);
  AlgebraElement out = target.zero();
  for (const auto& [m, coeff] : a.terms()) {
    const auto& letters = m.letters;
    const std::size_t k = letters.size();
    // suffix[i] = u(x_i ... x_{k-1})
    std::vector<AlgebraElement> suffix(k + 1, target.one());
    if (!u.is_identity())
      for (std::size_t i = k; i-- > 0;) suffix[i] = target.multiply(u.image(letters[i]), suffix[i + 1]);
    AlgebraElement prefix = target.one();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const AlgebraElement* f = value(letters[i]);
      if (f != nullptr && !f->is_zero()) {
        const int sign = sign_of_parity(static_cast<long>(degree) * prefix_degree);
        AlgebraElement piece;
        if (u.is_identity()) {
          Monomial pre{std::vector<int>(letters.begin(), letters.begin() + static_cast<long>(i))};
          Monomial post{std::vector<int>(letters.begin() + static_cast<long>(i) + 1, letters.end())};
          piece = target.multiply(target.multiply(target.term(pre, Rational(1)), *f), target.term(post, Rational(1)));
        } else {
          piece = target.multiply(target.multiply(prefix, *f), suffix[i + 1]);
        }
        out += (coeff * sign) * piece;
      }
      prefix_degree += source.internal_degree(letters[i]);
      if (!u.is_identity()) prefix = target.multiply(prefix, u.image(letters[i]));
    }
  }
  return out;
}

inline AlgebraMorphism AlgebraMorphism::identity(std::shared_ptr<const FreeDgAlgebra> algebra)
{
  AlgebraMorphism m(algebra, algebra, {});
  for (std::size_t i = 0; i < algebra->generator_count(); ++i) m.images_.push_back(algebra->gen(static_cast<int>(i)));
  m.identity_ = true;
  return m;
}

inline AlgebraElement AlgebraMorphism::apply(const Monomial& m) const
{
  AlgebraElement out = target_->one();
  for (int letter : m.letters) out = target_->multiply(out, image(letter));
  return out;
}

inline AlgebraElement AlgebraMorphism::apply(const AlgebraElement& a) const
{
  source_->check_owner(a);
  if (identity_) return AlgebraElement(target_->id(), a.terms());
  AlgebraElement out = target_->zero();
  for (const auto& [m, c] : a.terms()) out += c * apply(m);
  return out;
}

inline AlgebraElement FreeDgAlgebra::apply_differential(const AlgebraElement& a) const
{
  // d is the degree +1 derivation with d(v) = differential(v). Build a
  // throwaway identity map without touching shared ownership of *this.
  std::shared_ptr<const FreeDgAlgebra> self(std::shared_ptr<const FreeDgAlgebra>{}, this);
  const AlgebraMorphism id = AlgebraMorphism::identity(self);
  return extend_as_derivation(
      1, [this](int g) { return &differential(g); }, id, a);
}

inline std::vector<std::string> AlgebraMorphism::commutation_failures() const
{
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < source_->generator_count(); ++i) {
    const int g = static_cast<int>(i);
    const AlgebraElement lhs = apply(source_->differential(g));
    const AlgebraElement rhs = target_->apply_differential(image(g));
    if (!(lhs == rhs)) bad.push_back(source_->generator(g).name);
  }
  return bad;
}

// --- homology of the underlying complex -------------------------------------

// Complex of A on internal degrees [lo, hi], basis = monomials.
inline CochainComplex underlying_complex(const FreeDgAlgebra& a, int lo, int hi)
{
  CochainComplex c(lo, hi);
  std::map<int, std::vector<Monomial>> bases;
  for (int n = lo; n <= hi; ++n) {
    bases[n] = a.basis_internal(n);
    std::vector<std::string> labels;
    for (const auto& m : bases[n]) labels.push_back(a.to_string(m));
    c.set_space(n, std::move(labels));
  }
  for (int n = lo; n < hi; ++n) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < bases[n + 1].size(); ++i) index.emplace(bases[n + 1][i], i);
    Matrix d(bases[n + 1].size(), bases[n].size());
    for (std::size_t j = 0; j < bases[n].size(); ++j) {
      SparseVector col;
      const AlgebraElement image = a.apply_differential(a.term(bases[n][j], Rational(1)));
      for (const auto& [m, x] : image.terms()) add_entry(col, index.at(m), x);
      d.set_column(j, std::move(col));
    }
    c.set_differential(n, std::move(d));
  }
  return c;
}

struct AlgebraHomology {
  std::size_t dimension = 0;
  std::vector<AlgebraElement> representatives;
};

// Homology of A in a native degree.
inline AlgebraHomology algebra_homology(const FreeDgAlgebra& a, int native_degree)
{
  const int n = to_internal_degree(a.grading(), native_degree);
  const CochainComplex c = underlying_complex(a, n - 1, n + 1);
  const HomologyResult h = homology(c, n);
  const auto basis = a.basis_internal(n);
  AlgebraHomology out{h.dimension, {}};
  for (const auto& v : h.representatives) {
    AlgebraElement e = a.zero();
    for (const auto& [i, x] : v) e.add_term(basis[i], x);
    out.representatives.push_back(std::move(e));
  }
  return out;
}

// --- indecomposables ----------------------------------------------------------

// (V, d_(1)) on the non-base generators, stored on internal degrees.
inline CochainComplex indecomposables(const FreeDgAlgebra& a)
{
  std::vector<int> gens;
  for (std::size_t i = 0; i < a.generator_count(); ++i)
    if (!a.generator(static_cast<int>(i)).base) gens.push_back(static_cast<int>(i));
  int lo = 0, hi = 0;
  bool first = true;
  for (int g : gens) {
    const int d = a.internal_degree(g);
    lo = first ? d : std::min(lo, d);
    hi = first ? d : std::max(hi, d);
    first = false;
  }
  lo -= 1;
  hi += 1;
  CochainComplex c(lo, hi);
  std::map<int, std::vector<int>> by_degree;
  for (int g : gens) by_degree[a.internal_degree(g)].push_back(g);
  for (int n = lo; n <= hi; ++n) {
    std::vector<std::string> labels;
    for (int g : by_degree[n]) labels.push_back(a.generator(g).name);
    c.set_space(n, std::move(labels));
  }
  for (int n = lo; n < hi; ++n) {
    const auto& src = by_degree[n];
    const auto& dst = by_degree[n + 1];
    Matrix d(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (const auto& [g, x] : a.linear_part(src[j])) {
        auto it = std::find(dst.begin(), dst.end(), g);
        if (it != dst.end()) d.set(static_cast<std::size_t>(it - dst.begin()), j, x);
      }
    }
    c.set_differential(n, std::move(d));
  }
  return c;
}

inline std::size_t quillen_homology(const FreeDgAlgebra& a, int native_degree)
{
  const CochainComplex c = indecomposables(a);
  const int n = to_internal_degree(a.grading(), native_degree);
  if (n < c.lo() + 1 || n > c.hi() - 1) return 0;
  return homology(c, n).dimension;
}

}  // namespace dertower
