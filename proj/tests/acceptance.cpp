// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "dertower/models.hpp"
#include "dertower/report.hpp"
#include "oracle.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef DERTOWER_CLI
#error "DERTOWER_CLI must name the command line tool"
#endif

using namespace dertower;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

constexpr int kWindow = 10;

struct Option {
  std::string name;
  std::optional<DerivationComplex> der;
  FilteredComplex fc;
};

// self, trivial, and cone for associative models, each on [-W-2, W+2].
std::vector<Option> coefficient_options(const Model& m, int window)
{
  std::vector<Option> out;
  for (const std::string name : {"self", "trivial"}) {
    Option o{name, DerivationComplex(m.algebra, m.base_mask(),
                                     name == "self" ? Coefficients::self(m.algebra) : Coefficients::trivial(m.algebra)),
             {}};
    o.fc = filtered_derivations(*o.der, -window - 2, window + 2);
    out.push_back(std::move(o));
  }
  if (m.is_adams_hilton()) {
    Option o{"cone", std::nullopt, ConeComplex(m.algebra).filtered(-window - 2, window + 2)};
    out.push_back(std::move(o));
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fixed(double x)
{
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << x;
  return s.str();
}

// --- 1 ------------------------------------------------------------------------------

AlgebraElement random_element(const FreeDgAlgebra& a, int native, std::mt19937& rng)
{
  const auto& basis = a.basis_in_degree(native);
  AlgebraElement e = a.zero();
  if (basis.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int k = 0; k < 3; ++k) e.add_term(basis[pick(rng)], Rational(coeff(rng)));
  return e;
}

Outcome criterion_structure()
{
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20261016);
  std::size_t monomials = 0, samples = 0;
  std::vector<std::string> bad;
  const auto names = standard_builtins();
  for (const auto& name : names) {
    const Model m = builtin_model(name);
    const FreeDgAlgebra& a = *m.algebra;
    for (int d = 0; d <= 12; ++d)
      for (const auto& mono : a.basis_in_degree(d)) {
        ++monomials;
        if (!a.apply_differential(a.apply_differential(a.term(mono, Rational(1)))).is_zero())
          bad.push_back(name + ": d^2 != 0 on " + a.to_string(mono));
      }
    const DerivationComplex der(m.algebra, {}, Coefficients::self(m.algebra));
    // degrees 0..6 with a nonempty basis
    std::vector<int> live;
    for (int d = 0; d <= 6; ++d)
      if (!a.basis_in_degree(d).empty()) live.push_back(d);
    std::uniform_int_distribution<std::size_t> deg(0, live.size() - 1);
    const std::size_t per_model = 1000 / names.size() + 1;
    for (std::size_t k = 0; k < per_model; ++k) {
      const int da = live[deg(rng)], db = live[deg(rng)], dc = live[deg(rng)];
      const AlgebraElement x = random_element(a, da, rng), y = random_element(a, db, rng), z = random_element(a, dc, rng);
      if (x.is_zero() || y.is_zero() || z.is_zero()) {
        --k;  // cancelling terms; draw again
        continue;
      }
      ++samples;
      const int ix = to_internal_degree(a.grading(), da), iy = to_internal_degree(a.grading(), db),
                iz = to_internal_degree(a.grading(), dc);
      const Rational sxy(sign_of_parity(static_cast<long>(ix) * iy));
      // Leibniz for d
      const AlgebraElement lhs = a.apply_differential(a.multiply(x, y));
      const AlgebraElement rhs = a.multiply(a.apply_differential(x), y) +
                                 Rational(sign_of_parity(ix)) * a.multiply(x, a.apply_differential(y));
      if (!(lhs == rhs)) bad.push_back(name + ": Leibniz for d");
      // associativity
      if (!(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)))) bad.push_back(name + ": associativity");
      // Koszul symmetry
      if (a.flavor() == Flavor::commutative && !(a.multiply(x, y) == sxy * a.multiply(y, x)))
        bad.push_back(name + ": graded commutativity");
      if (!(a.commutator(x, y) == Rational(-1) * sxy * a.commutator(y, x))) bad.push_back(name + ": commutator symmetry");
      // graded Jacobi for the commutator
      const Rational sxz(sign_of_parity(static_cast<long>(ix) * iz)), syx(sign_of_parity(static_cast<long>(iy) * ix)),
          szy(sign_of_parity(static_cast<long>(iz) * iy));
      const AlgebraElement jac = sxz * a.commutator(x, a.commutator(y, z)) + syx * a.commutator(y, a.commutator(z, x)) +
                                 szy * a.commutator(z, a.commutator(x, y));
      if (!jac.is_zero()) bad.push_back(name + ": Jacobi for the commutator");
      // a random derivation is a derivation
      std::uniform_int_distribution<int> pdeg(-4, 2);
      const int p = pdeg(rng);
      const auto& slots = der.basis(p);
      if (!slots.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
        SparseVector v;
        add_entry(v, pick(rng), Rational(1));
        add_entry(v, pick(rng), Rational(2));
        const Derivation f = der.from_vector(p, v);
        const AlgebraElement l = der.evaluate(f, a.multiply(x, y));
        const AlgebraElement r = a.multiply(der.evaluate(f, x), y) +
                                 Rational(sign_of_parity(static_cast<long>(p) * ix)) * a.multiply(x, der.evaluate(f, y));
        if (!(l == r)) bad.push_back(name + ": derivation Leibniz");
      }
    }
  }
  const double t = seconds_since(start);
  Outcome o{bad.empty() && samples >= 1000 && t < 60.0, ""};
  o.detail = std::to_string(monomials) + " monomials, " + std::to_string(samples) + " random triples, " +
             std::to_string(bad.size()) + " failures, " + fixed(t) + " s";
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

// --- 2 ------------------------------------------------------------------------------

Outcome criterion_jacobi_zariski()
{
  std::size_t triples = 0, degrees = 0;
  std::vector<std::string> bad;
  for (const auto& name : standard_builtins()) {
    const Model m = builtin_model(name);
    const FreeDgAlgebra& a = *m.algebra;
    const int top = a.max_stage();
    auto mask = [&](int stage) {
      std::vector<bool> out;
      for (const auto& g : a.generators()) out.push_back(g.base || g.stage <= stage);
      return out;
    };
    for (int i = 0; i <= top; ++i) {
      for (int j = i + 1; j <= top; ++j) {
        const JacobiZariski jz(m.algebra, mask(i), mask(j), Coefficients::self(m.algebra));
        ++triples;
        if (!jz.guaranteed_exact()) bad.push_back(name + ": stage masks are not sub dg algebras");
        for (int p = -10; p <= 10; ++p) {
          ++degrees;
          const std::string where = name + " stages " + std::to_string(i) + "<" + std::to_string(j) + " p=" + std::to_string(p);
          const Matrix inc = jz.inclusion(p), res = jz.restriction(p);
          const std::size_t total = jz.total().dimension(p), rel = jz.relative().dimension(p),
                            restr = jz.restricted().dimension(p);
          if (total != rel + restr) bad.push_back(where + ": dimensions");
          if (!(res * inc).is_zero_matrix()) bad.push_back(where + ": composite is nonzero");
          if (rank(inc) != rel) bad.push_back(where + ": inclusion is not injective");
          if (rank(res) != restr) bad.push_back(where + ": restriction is not surjective");
          if (total - rank(res) != rank(inc)) bad.push_back(where + ": kernel differs from image");
        }
      }
    }
  }
  Outcome o{bad.empty() && triples > 0, std::to_string(triples) + " stage pairs, " + std::to_string(degrees) +
                                            " degrees, " + std::to_string(bad.size()) + " failures"};
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

// --- 3, 4 -----------------------------------------------------------------------------

Outcome criterion_assembly()
{
  std::vector<std::string> bad, times;
  std::size_t cases = 0;
  for (const auto& name : standard_builtins()) {
    const auto start = std::chrono::steady_clock::now();
    const Model m = builtin_model(name);
    for (auto& opt : coefficient_options(m, kWindow)) {
      SpectralSequence ss(opt.fc, -kWindow, kWindow);
      for (const auto& row : e_infinity_and_compare(ss)) {
        ++cases;
        if (row.assembled != row.direct || !row.stable_page_agrees)
          bad.push_back(name + "/" + opt.name + " n=" + std::to_string(row.n));
      }
    }
    times.push_back(name + " " + fixed(seconds_since(start)) + "s");
  }
  Outcome o{bad.empty(), std::to_string(cases) + " (model, coefficients, degree) cases, " + std::to_string(bad.size()) +
                             " mismatches; " + [&] {
                               std::string s;
                               for (const auto& t : times) s += (s.empty() ? "" : ", ") + t;
                               return s;
                             }()};
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

Outcome criterion_routes()
{
  std::vector<std::string> bad;
  std::size_t complexes = 0;
  for (const auto& name : standard_builtins()) {
    const Model m = builtin_model(name);
    for (auto& opt : coefficient_options(m, kWindow)) {
      ++complexes;
      SpectralSequence ss(opt.fc, -kWindow, kWindow);
      ExactCouple ec(opt.fc, -kWindow, kWindow);
      for (const auto& f : page_invariant_failures(ss, 6)) bad.push_back(name + "/" + opt.name + ": " + f);
      for (const auto& f : route_mismatches(ss, ec, 6)) bad.push_back(name + "/" + opt.name + ": " + f);
    }
  }
  Outcome o{bad.empty(), std::to_string(complexes) + " filtered complexes, pages 1..6, window " + std::to_string(kWindow) +
                             ", " + std::to_string(bad.size()) + " failures"};
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

// --- 5 ------------------------------------------------------------------------------

Outcome criterion_first_page()
{
  std::vector<std::string> bad;
  std::size_t entries = 0;
  for (const auto& name : standard_builtins()) {
    const Model m = builtin_model(name);
    if (!m.is_adams_hilton()) continue;
    for (const std::string coeff : {"self", "trivial"}) {
      const DerivationComplex der(m.algebra, m.base_mask(),
                                  coeff == "self" ? Coefficients::self(m.algebra) : Coefficients::trivial(m.algebra));
      const FilteredComplex fc = filtered_derivations(der, -kWindow - 2, kWindow + 2);
      SpectralSequence ss(fc, -kWindow, kWindow);
      const auto report = first_page_law(der, fc, ss, -kWindow, kWindow);
      entries += report.entries.size();
      for (const auto& e : report.entries)
        if (e.predicted != e.engine || !e.basis_agrees || !e.d1_agrees)
          bad.push_back(name + "/" + coeff + " (s=" + std::to_string(e.s) + ", n=" + std::to_string(e.n) + ")");
    }
  }

  // Λ(x2, y3): d_1 takes (x->1) onto (y->x) through the Leibniz term x^2.
  const Model s2 = builtin_model("sullivan:sphere:even:2");
  const DerivationComplex der(s2.algebra, {}, Coefficients::self(s2.algebra));
  const FilteredComplex fc = filtered_derivations(der, -kWindow - 2, kWindow + 2);
  SpectralSequence ss(fc, -kWindow, kWindow);
  const int x = s2.algebra->index_of("x"), y = s2.algebra->index_of("y");
  const Slot x_to_1{x, Monomial{}}, y_to_x{y, Monomial{{x}}};
  bool leibniz_kill = ss.dimension(1, 2, -2) == 1 && ss.dimension(1, 3, -1) == 1;
  if (leibniz_kill) {
    const SparseVector src = detail::project(ss.entry(1, 2, -2).representatives()[0], fc, -2, 2, 2);
    const SparseVector dst = detail::project(ss.entry(1, 3, -1).representatives()[0], fc, -1, 3, 3);
    leibniz_kill = src == scaled(unit_vector(*der.index_of(-2, x_to_1)), src.begin()->second) &&
                   dst == scaled(unit_vector(*der.index_of(-1, y_to_x)), dst.begin()->second) &&
                   !ss.differential(1, 2, -2).is_zero_matrix() && ss.dimension(2, 2, -2) == 0 && ss.dimension(2, 3, -1) == 0;
  }
  // hand oracle for H^p(Der Λ(x2,y3)), p = -8..0: 1 at p = -3 and p = 0
  bool einf = true;
  for (int p = -8; p <= 0; ++p) {
    std::size_t assembled = 0;
    for (int s = ss.smin(); s <= ss.smax(); ++s) assembled += ss.e_infinity(s, p).dimension();
    const std::size_t expected = (p == -3 || p == 0) ? 1 : 0;
    einf = einf && assembled == expected;
  }
  Outcome o{bad.empty() && leibniz_kill && einf, ""};
  o.detail = std::to_string(entries) + " homological first-page entries, " + std::to_string(bad.size()) +
             " failures; Λ(x2,y3) d_1 (x->1) -> (y->x): " + (leibniz_kill ? "present" : "missing") +
             "; E_inf against oracle: " + (einf ? "equal" : "different");
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

// --- 6 ------------------------------------------------------------------------------

Outcome criterion_collapse()
{
  std::vector<std::string> bad;
  std::size_t zero_cells = 0, models = 0;
  for (const auto& name : standard_builtins()) {
    const Model m = builtin_model(name);
    for (const std::string coeff : {"trivial", "self"}) {
      const DerivationComplex der(m.algebra, m.base_mask(),
                                  coeff == "self" ? Coefficients::self(m.algebra) : Coefficients::trivial(m.algebra));
      const FilteredComplex fc = filtered_derivations(der, -kWindow - 2, kWindow + 2);
      SpectralSequence ss(fc, -kWindow, kWindow);
      const auto report = collapse_report(der, ss, -kWindow, kWindow);
      zero_cells += report.predicted_zero_cells;
      if (!report.applicable) bad.push_back(name + "/" + coeff + ": not a cellular tower");
      for (const auto& f : report.vanishing_failures) bad.push_back(name + "/" + coeff + ": " + f);
      if (coeff == "trivial") {
        ++models;
        if (!report.degenerates_predicted) bad.push_back(name + ": degeneration not predicted for trivial coefficients");
        // E_2 = E_inf exactly, whatever the prediction says
        for (int s = ss.smin(); s <= ss.smax(); ++s)
          for (int n = -kWindow; n <= kWindow; ++n)
            if (ss.dimension(2, s, n) != ss.e_infinity(s, n).dimension())
              bad.push_back(name + ": E_2 != E_inf at s=" + std::to_string(s) + " n=" + std::to_string(n));
      }
    }
  }
  Outcome o{bad.empty(), std::to_string(models) + " builtins with trivial coefficients degenerate at E_2; " +
                             std::to_string(zero_cells) + " predicted zero cells checked; " + std::to_string(bad.size()) +
                             " failures"};
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

// --- 7, 8 -----------------------------------------------------------------------------

Outcome criterion_loop_s3()
{
  const auto start = std::chrono::steady_clock::now();
  oracle::WordAlgebra o;
  o.degree['x'] = 2;
  // loop degree L sits in cone homological degree L - 3
  const auto ref = oracle::cone_homology(o, -3, 5);
  const std::vector<std::size_t> pinned{1, 0, 1, 1, 1, 1, 1, 1, 1};
  const auto got = loop_homology(builtin_model("ah:sphere:3"), 8);
  std::vector<std::size_t> dims;
  for (const auto& r : got) dims.push_back(r.dimension);
  const double t = seconds_since(start);
  std::string text;
  for (auto d : dims) text += (text.empty() ? "" : ",") + std::to_string(d);
  return Outcome{dims == ref && ref == pinned && t < 10.0,
                 "Betti(LS^3) L=0..8 = (" + text + "), oracle " + (dims == ref ? "agrees" : "differs") + ", " + fixed(t) + " s"};
}

Outcome criterion_aut_s2()
{
  const auto start = std::chrono::steady_clock::now();
  // Hand oracle for Der Λ(x2, y3), dy = x^2, in degrees p = -9..-1:
  //   Der^-1 = <(y->x)>, Der^-2 = <(x->1)>, Der^-3 = <(y->1)>, others 0;
  //   d(x->1) = -2 (y->x), d(y->x) = 0, d(y->1) = 0, and d on Der^0 = <(x->x), (y->y)> has rank 1.
  const std::map<int, std::size_t> dim{{-3, 1}, {-2, 1}, {-1, 1}, {0, 2}};
  const std::map<int, std::size_t> rank_out{{-3, 0}, {-2, 1}, {-1, 0}, {0, 1}};
  auto get = [](const std::map<int, std::size_t>& m, int p) { return m.count(p) ? m.at(p) : std::size_t{0}; };
  std::vector<std::size_t> expected;
  for (int n = 1; n <= 8; ++n) {
    const int p = -n;
    expected.push_back(get(dim, p) - get(rank_out, p) - get(rank_out, p - 1));
  }
  const auto r = aut_homotopy(builtin_model("trivial:sullivan:sphere:even:2"), 8);
  std::vector<std::size_t> got;
  for (const auto& g : r.groups) got.push_back(g.dimension);
  const std::vector<std::size_t> pinned{0, 0, 1, 0, 0, 0, 0, 0};
  const double t = seconds_since(start);
  std::string text;
  for (auto d : got) text += (text.empty() ? "" : ",") + std::to_string(d);
  return Outcome{got == expected && expected == pinned && t < 5.0,
                 "pi_n(aut_1 S^2) n=1..8 = (" + text + "), hand oracle " + (got == expected ? "agrees" : "differs") + ", " +
                     fixed(t) + " s"};
}

// --- 9 ------------------------------------------------------------------------------

struct ProductStats {
  std::size_t classes = 0, refused = 0, pairs = 0, triples = 0, absorption = 0;
  std::vector<std::string> bad;
};

// Classes of loop degree L <= window with zero algebra part; products and
// triples only while the total loop degree stays inside the window.
void cup_checks(const std::string& name, int window, ProductStats& st)
{
  const Model m = builtin_model(name);
  const ConeComplex cone(m.algebra);
  const int top = top_cell_dimension(*m.algebra);
  const int nlo = top - window, nhi = top;
  const CochainComplex c = cone.complex(2 * nlo - 1, 2 * nhi + 1);
  std::map<int, Subquotient> quotients;
  auto is_boundary = [&](int n, const SparseVector& v) {
    if (v.empty()) return true;
    auto it = quotients.find(n);
    if (it == quotients.end())
      it = quotients
               .emplace(n, Subquotient::nested(kernel_basis(c.differential(n)), image_basis(c.differential(n - 1)),
                                               c.dimension(n)))
               .first;
    return it->second.is_zero_class(v);
  };
  struct Class {
    int n;
    SparseVector v;
  };
  auto loop_degree = [&](int n) { return top - n; };
  std::vector<Class> classes;
  for (int n = nlo; n <= nhi; ++n) {
    for (const auto& v : homology(c, n).representatives) {
      ++st.classes;
      const auto [x, phi] = cone.split(n, v);
      if (!x.is_zero()) {
        ++st.refused;
        try {
          cup_product(cone, n, v, n, v);
          st.bad.push_back(name + ": algebra-part class was not refused");
        } catch (const UnsupportedCombination&) {
        }
        continue;
      }
      classes.push_back({n, v});
    }
  }
  auto cup = [&](const Class& a, const Class& b) { return Class{a.n + b.n, cup_product(cone, a.n, a.v, b.n, b.v).cocycle}; };
  for (const auto& a : classes) {
    for (const auto& b : classes) {
      const int lab = loop_degree(a.n) + loop_degree(b.n);
      if (lab > window) continue;
      ++st.pairs;
      const Class ab = cup(a, b), ba = cup(b, a);
      SparseVector diff = ab.v;
      add_scaled(diff, ba.v, Rational(-sign_of_parity(static_cast<long>(a.n) * b.n)));
      if (!is_boundary(ab.n, diff)) st.bad.push_back(name + ": not graded commutative");
      // a + D(phi) for basis derivations phi of degree a.n - 1
      if (lab <= window / 2) {
        for (std::size_t k = cone.algebra_dimension(a.n - 1); k < cone.dimension(a.n - 1); ++k) {
          ++st.absorption;
          SparseVector shifted = a.v;
          add_scaled(shifted, cone.differential(a.n - 1, unit_vector(k)), Rational(1));
          SparseVector change = cup(Class{a.n, shifted}, b).v;
          add_scaled(change, ab.v, Rational(-1));
          if (!is_boundary(ab.n, change)) st.bad.push_back(name + ": cup product depends on the representative");
        }
      }
      for (const auto& d : classes) {
        if (lab + loop_degree(d.n) > window) continue;
        ++st.triples;
        SparseVector assoc = cup(cup(a, b), d).v;
        add_scaled(assoc, cup(a, cup(b, d)).v, Rational(-1));
        if (!is_boundary(a.n + b.n + d.n, assoc)) st.bad.push_back(name + ": not associative");
      }
    }
  }
}

Outcome criterion_products()
{
  ProductStats st;
  for (const auto& name : {"ah:wedge:2,2", "ah:sphere:3"}) cup_checks(name, 8, st);
  const Model wedge = builtin_model("ah:wedge:2,2");
  const ConvolutionAlgebra conv(wedge);
  const int top = top_cell_dimension(*wedge.algebra);
  auto leibniz = leibniz_failures(conv, -top, 8 - top);
  std::size_t pairs = 0;
  for (int k = -top; k <= 8 - top; ++k)
    for (int l = -top; l <= 8 - top; ++l) pairs += conv.basis(k).size() * conv.basis(l).size();
  for (const auto& f : conv.diagonal_failures()) st.bad.push_back("ah:wedge:2,2 diagonal: " + f);
  for (const auto& f : leibniz) st.bad.push_back("ah:wedge:2,2 Leibniz: " + f);
  Outcome o{st.bad.empty(), ""};
  o.detail = std::to_string(st.classes) + " cone classes (" + std::to_string(st.refused) + " with algebra part, refused), " +
             std::to_string(st.pairs) + " pairs, " + std::to_string(st.triples) + " triples, " +
             std::to_string(st.absorption) + " absorption checks; " + std::to_string(pairs) +
             " convolution pairs; " + std::to_string(st.bad.size()) + " failures";
  if (!st.bad.empty()) o.detail += "; first: " + st.bad.front();
  return o;
}

// --- 10 -----------------------------------------------------------------------------

std::optional<std::string> run_cli(const std::string& args)
{
  const std::string command = std::string(DERTOWER_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  const int status = pclose(pipe);
  if (status != 0) return std::nullopt;
  return out;
}

Outcome criterion_determinism()
{
  const std::vector<std::string> commands{
      "validate builtin:sullivan:sphere:even:2",
      "homology builtin:sullivan:cpn:2 --reps",
      "quillen builtin:ah:cpn:2",
      "der builtin:sullivan:sphere:even:2 --reps",
      "der builtin:ah:wedge:2,2 --target trivial --range -6..0",
      "ss builtin:sullivan:sphere:even:2 --coefficients self --pages 1..4 --reps --check-first-page",
      "ss builtin:ah:sphere:3 --coefficients trivial --check-collapse",
      "ss builtin:ah:wedge:2,2 --coefficients cone --max-degree 8 --check-multiplicative",
      "ss builtin:sullivan:hopf --coefficients self --convention sullivan-labels",
      "loop builtin:ah:sphere:3 --max-degree 8 --reps",
      "loop builtin:ah:wedge:2,3 --max-degree 6 --trace",
      "aut builtin:sullivan:cpn:2 --max-degree 8 --reps --trace",
      "hochschild builtin:ah:sphere:2 --max-degree 6",
  };
  std::vector<std::string> bad;
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    const auto first = run_cli(c + " --format records");
    const auto second = run_cli(c + " --format records");
    if (!first || !second) {
      bad.push_back(c + ": nonzero exit");
      continue;
    }
    if (first->empty()) bad.push_back(c + ": no records");
    if (*first != *second) bad.push_back(c + ": output differs between runs");
    bytes += first->size();
  }
  Outcome o{bad.empty(), std::to_string(commands.size()) + " commands run twice, " + std::to_string(bytes) +
                             " bytes of records each, " + std::to_string(bad.size()) + " failures"};
  if (!bad.empty()) o.detail += "; first: " + bad.front();
  return o;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"structure suite", criterion_structure},
      {"Jacobi-Zariski exactness", criterion_jacobi_zariski},
      {"E_inf assembly against the total complex", criterion_assembly},
      {"filtered and exact couple routes agree", criterion_routes},
      {"first page law", criterion_first_page},
      {"collapse", criterion_collapse},
      {"loop homology of S^3", criterion_loop_s3},
      {"aut_1 of S^2", criterion_aut_s2},
      {"products", criterion_products},
      {"determinism", criterion_determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << " [" << fixed(seconds_since(start)) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
