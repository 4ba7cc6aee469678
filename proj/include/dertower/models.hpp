#pragma once

// Built-in models, validation, and the high level computations behind the
// command line tool: loop space homology through the cone, and rational
// homotopy of aut_1 through derivations.

#include "dertower/cone.hpp"
#include "dertower/convolution.hpp"
#include "dertower/model_io.hpp"
#include "dertower/tower.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace dertower {

class UnknownModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<int> parse_parameters(const std::string& text, const std::string& name)
{
  std::vector<int> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw UnknownModelError("bad parameter '" + piece + "' in " + name);
    }
  }
  return out;
}

inline Model make_model(const std::string& text, const std::string& name, std::map<int, std::size_t> expected)
{
  Model m = parse_model(text, "builtin:" + name);
  m.expected_homology = std::move(expected);
  return m;
}

}  // namespace detail

// Names accepted by builtin_model, with parameter placeholders.
inline std::vector<std::string> builtin_names()
{
  return {"ah:sphere:n",          "ah:wedge:n,m",          "ah:cpn:n",   "ah:moore:n,k",
          "sullivan:sphere:odd:n", "sullivan:sphere:even:n", "sullivan:cpn:n", "sullivan:hopf",
          "trivial:<sullivan model>"};
}

inline Model builtin_model(const std::string& name)
{
  auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
  auto params = [&](const std::string& prefix, std::size_t count) {
    auto v = detail::parse_parameters(name.substr(prefix.size()), name);
    if (v.size() != count) throw UnknownModelError("wrong number of parameters in " + name);
    return v;
  };
  std::ostringstream t;
  if (starts("trivial:")) {
    Model inner = builtin_model(name.substr(8));
    if (!inner.is_sullivan()) throw UnknownModelError("trivial fibrations wrap Sullivan models: " + name);
    inner.algebra->set_metadata(name, "trivial fibration over a point with fiber " + inner.algebra->name());
    inner.source = "builtin:" + name;
    return inner;
  }
  if (starts("ah:sphere:")) {
    const int n = params("ah:sphere:", 1)[0];
    if (n < 2) throw UnknownModelError("ah:sphere needs n >= 2");
    t << "name " << name << "\ndescription S^" << n << "\nflavor associative\ngen x : " << n - 1 << "\n";
    return detail::make_model(t.str(), name, {{n, 1}});
  }
  if (starts("ah:wedge:")) {
    const auto p = params("ah:wedge:", 2);
    if (p[0] < 2 || p[1] < 2) throw UnknownModelError("ah:wedge needs n, m >= 2");
    t << "name " << name << "\ndescription S^" << p[0] << " v S^" << p[1] << "\nflavor associative\ngen a : " << p[0] - 1
      << "\ngen b : " << p[1] - 1 << "\n";
    std::map<int, std::size_t> h{{p[0], 1}};
    h[p[1]] += 1;
    return detail::make_model(t.str(), name, h);
  }
  if (starts("ah:cpn:")) {
    const int n = params("ah:cpn:", 1)[0];
    if (n < 1) throw UnknownModelError("ah:cpn needs n >= 1");
    std::map<int, std::size_t> h;
    for (int k = 1; k <= n; ++k) h[2 * k] = 1;
    std::ostringstream full;
    full << "name " << name << "\ndescription CP^" << n << "\nflavor associative\n";
    for (int k = 1; k <= n; ++k) full << "gen a" << 2 * k - 1 << " : " << 2 * k - 1 << "\n";
    for (int k = 2; k <= n; ++k) {
      std::string d, diag;
      for (int i = 1; i < k; ++i) {
        const std::string pair = "a" + std::to_string(2 * i - 1) + " a" + std::to_string(2 * (k - i) - 1);
        d += (d.empty() ? "" : " + ") + pair;
        diag += (diag.empty() ? "" : " + ") + std::string("a") + std::to_string(2 * i - 1) + " ⊗ a" +
                std::to_string(2 * (k - i) - 1);
      }
      full << "d a" << 2 * k - 1 << " = " << d << "\ndiag a" << 2 * k - 1 << " = " << diag << "\n";
    }
    return detail::make_model(full.str(), name, h);
  }
  if (starts("ah:moore:")) {
    const auto p = params("ah:moore:", 2);
    if (p[0] < 2 || p[1] == 0) throw UnknownModelError("ah:moore needs n >= 2 and k != 0");
    t << "name " << name << "\ndescription Moore space with cells in dimensions " << p[0] << " and " << p[0] + 1
      << "\nflavor associative\ngen a : " << p[0] - 1 << "\ngen b : " << p[0] << "\nd b = " << p[1] << " * a\n";
    return detail::make_model(t.str(), name, {});
  }
  if (starts("sullivan:sphere:odd:")) {
    const int n = params("sullivan:sphere:odd:", 1)[0];
    if (n < 3 || n % 2 == 0) throw UnknownModelError("sullivan:sphere:odd needs odd n >= 3");
    t << "name " << name << "\ndescription S^" << n << "\nflavor commutative\ngen x : " << n << "\n";
    return detail::make_model(t.str(), name, {{0, 1}, {n, 1}});
  }
  if (starts("sullivan:sphere:even:")) {
    const int n = params("sullivan:sphere:even:", 1)[0];
    if (n < 2 || n % 2 != 0) throw UnknownModelError("sullivan:sphere:even needs even n >= 2");
    t << "name " << name << "\ndescription S^" << n << "\nflavor commutative\ngen x : " << n << "\ngen y : " << 2 * n - 1
      << "\nd y = x^2\n";
    return detail::make_model(t.str(), name, {{0, 1}, {n, 1}});
  }
  if (starts("sullivan:cpn:")) {
    const int n = params("sullivan:cpn:", 1)[0];
    if (n < 1) throw UnknownModelError("sullivan:cpn needs n >= 1");
    t << "name " << name << "\ndescription CP^" << n << "\nflavor commutative\ngen x : 2\ngen y : " << 2 * n + 1
      << "\nd y = x^" << n + 1 << "\n";
    std::map<int, std::size_t> h;
    for (int k = 0; k <= n; ++k) h[2 * k] = 1;
    return detail::make_model(t.str(), name, h);
  }
  if (name == "sullivan:hopf") {
    t << "name " << name << "\ndescription S^1 -> S^3 -> S^2 relative to the base S^2\nflavor commutative\n"
      << "gen x : 2 base\ngen y : 3 base\ngen z : 1\nd y = x^2\nd z = x\n";
    return detail::make_model(t.str(), name, {{0, 1}, {3, 1}});
  }
  throw UnknownModelError("unknown builtin model " + name);
}

// Builtins with small parameters, used by the acceptance checks and `ss --all`.
inline std::vector<std::string> standard_builtins()
{
  return {"ah:sphere:2",          "ah:sphere:3",          "ah:wedge:2,2",   "ah:wedge:2,3",   "ah:cpn:2",
          "ah:moore:2,2",         "sullivan:sphere:odd:3", "sullivan:sphere:even:2", "sullivan:sphere:even:4",
          "sullivan:cpn:2",       "sullivan:hopf",         "trivial:sullivan:sphere:even:2"};
}

// builtin:NAME or a bare builtin name; anything else is read as a path by the caller.
inline bool is_builtin_reference(const std::string& s)
{
  return s.rfind("builtin:", 0) == 0 || s.rfind("ah:", 0) == 0 || s.rfind("sullivan:", 0) == 0 ||
         s.rfind("trivial:", 0) == 0;
}

inline Model builtin_reference(const std::string& s)
{
  return builtin_model(s.rfind("builtin:", 0) == 0 ? s.substr(8) : s);
}

// --- validation -----------------------------------------------------------------

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const
  {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
  }
};

// Native degrees where the model's (co)homology is compared with the declared
// values: up to the top declared degree plus `margin`.
inline ValidationReport validate_model(const Model& model, int margin = 2)
{
  ValidationReport r;
  const FreeDgAlgebra& a = *model.algebra;
  const int step = a.grading() == Grading::homological ? -1 : 1;
  auto add = [&](std::string name, std::vector<std::string> problems) {
    std::string detail;
    for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
    r.checks.push_back(ValidationCheck{std::move(name), problems.empty(), detail});
  };

  std::vector<std::string> problems;
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    const auto& g = a.generator(static_cast<int>(i));
    for (const auto& [m, c] : a.differential(static_cast<int>(i)).terms())
      if (a.native_degree(m) != g.degree + step) {
        problems.push_back("d " + g.name + " has a term of degree " + std::to_string(a.native_degree(m)));
        break;
      }
  }
  add("degree", problems);
  const bool homogeneous = problems.empty();

  problems.clear();
  if (homogeneous)
    for (const auto& name : square_failures(a)) problems.push_back("d(d " + name + ") != 0");
  else
    problems.push_back("skipped: differential is not homogeneous");
  add("d-squared", problems);
  const bool sound = homogeneous && problems.empty();

  problems.clear();
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    const auto& g = a.generator(static_cast<int>(i));
    if (g.base && g.stage != 0) problems.push_back("base generator " + g.name + " has stage " + std::to_string(g.stage));
    if (!g.base && g.stage < 1) problems.push_back("generator " + g.name + " has stage " + std::to_string(g.stage));
    for (const auto& [m, c] : a.differential(static_cast<int>(i)).terms())
      for (int letter : m.letters) {
        const auto& h = a.generator(letter);
        if (g.base && !h.base) problems.push_back("d " + g.name + " leaves the base through " + h.name);
        else if (!g.base && h.stage >= g.stage)
          problems.push_back("d " + g.name + " uses " + h.name + " from stage " + std::to_string(h.stage));
      }
  }
  add("tower", problems);

  problems.clear();
  if (model.is_adams_hilton()) {
    for (const auto& g : a.generators())
      if (g.degree < 1) problems.push_back("generator " + g.name + " has degree " + std::to_string(g.degree));
    add("connected", problems);
  } else if (model.is_sullivan()) {
    for (const auto& g : a.generators())
      if (g.degree < 1 && !g.auxiliary) problems.push_back("generator " + g.name + " has degree " + std::to_string(g.degree));
    add("connected", problems);
  }

  if (model.expected_homology && a.enumerable() && sound) {
    problems.clear();
    int top = 0;
    for (const auto& [d, k] : *model.expected_homology) top = std::max(top, d);
    for (int d = model.is_adams_hilton() ? 1 : 0; d <= top + margin; ++d) {
      const auto it = model.expected_homology->find(d);
      const std::size_t want = it == model.expected_homology->end() ? 0 : it->second;
      // reduced homology of X is Quillen homology shifted up by one
      const std::size_t got = model.is_adams_hilton() ? quillen_homology(a, d - 1) : algebra_homology(a, d).dimension;
      if (got != want)
        problems.push_back("degree " + std::to_string(d) + ": expected " + std::to_string(want) + ", found " + std::to_string(got));
    }
    add(model.is_adams_hilton() ? "quillen-homology" : "cohomology", problems);
  }

  if (!model.diagonal.empty()) {
    if (model.is_adams_hilton())
      add("diagonal", ConvolutionAlgebra(model).diagonal_failures());
    else
      add("diagonal", {"diagonals need an associative homological model"});
  }
  return r;
}

// --- loop space homology ------------------------------------------------------------

inline int top_cell_dimension(const FreeDgAlgebra& q)
{
  int m = 0;
  for (const auto& g : q.generators()) m = std::max(m, std::abs(g.degree) + 1);
  return m;
}

struct DegreeDimension {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<std::string> representatives;
};

inline std::string vector_text(const std::vector<std::string>& labels, const SparseVector& v)
{
  std::string out;
  for (const auto& [i, c] : v) {
    const bool negative = sgn(c) < 0;
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    const Rational mag = abs(c);
    if (mag != 1) out += to_string(mag) + " * ";
    out += labels.at(i);
  }
  return out.empty() ? "0" : out;
}

// H_L(LX) for L = 0..window, from the cone of ad: LX degree L sits in cone
// homological degree L - m, m the top cell dimension.
inline std::vector<DegreeDimension> loop_homology(const Model& model, int window, bool reps = false)
{
  if (!model.is_adams_hilton()) throw UnsupportedError("loop homology needs an associative homological model");
  const ConeComplex cone(model.algebra);
  const int m = top_cell_dimension(*model.algebra);
  std::vector<DegreeDimension> out;
  for (int L = 0; L <= window; ++L) {
    const int n = to_internal_degree(Grading::homological, L - m);
    const CochainComplex c = cone.complex(n - 1, n + 1);
    const HomologyResult h = homology(c, n);
    DegreeDimension d{L, h.dimension, {}};
    if (reps)
      for (const auto& v : h.representatives) d.representatives.push_back(vector_text(c.labels(n), v));
    out.push_back(std::move(d));
  }
  return out;
}

// Raw cone cohomology H^n(cone) in internal degrees [lo, hi].
inline std::vector<DegreeDimension> cone_cohomology(const Model& model, int lo, int hi, bool reps = false)
{
  if (model.algebra->flavor() != Flavor::associative) throw UnsupportedError("the cone needs an associative model");
  const ConeComplex cone(model.algebra);
  const CochainComplex c = cone.complex(lo - 1, hi + 1);
  std::vector<DegreeDimension> out;
  for (int n = lo; n <= hi; ++n) {
    const HomologyResult h = homology(c, n);
    DegreeDimension d{n, h.dimension, {}};
    if (reps)
      for (const auto& v : h.representatives) d.representatives.push_back(vector_text(c.labels(n), v));
    out.push_back(std::move(d));
  }
  return out;
}

// --- aut_1 ------------------------------------------------------------------------

struct BracketEntry {
  int left_degree = 0;
  std::size_t left = 0;
  int right_degree = 0;
  std::size_t right = 0;
  SparseVector value;  // coordinates in the class basis of pi_{left+right}
};

struct AutReport {
  std::vector<DegreeDimension> groups;  // pi_n(aut_1) = H^{-n}(Der) for n = 1..window
  std::vector<BracketEntry> brackets;   // nonzero brackets of basis classes
};

// Rational homotopy of aut_1 from H(Der_B(A)), with the bracket of
// representatives.
inline AutReport aut_homotopy(const Model& model, int window, bool reps = false)
{
  const auto a = model.algebra;
  DerivationComplex der(a, model.base_mask(), Coefficients::self(a));
  AutReport out;
  const CochainComplex c = der.complex(-window - 1, 1);
  std::map<int, HomologyResult> classes;
  for (int k = 1; k <= window; ++k) {
    classes[k] = homology(c, -k);
    DegreeDimension d{k, classes[k].dimension, {}};
    if (reps)
      for (const auto& v : classes[k].representatives) d.representatives.push_back(vector_text(c.labels(-k), v));
    out.groups.push_back(std::move(d));
  }
  for (int k = 1; k <= window; ++k) {
    for (int l = k; k + l <= window; ++l) {
      auto cycles = kernel_basis(c.differential(-k - l));
      auto boundaries = image_basis(c.differential(-k - l - 1));
      const auto q = Subquotient::nested(cycles, boundaries, c.dimension(-k - l));
      for (std::size_t i = 0; i < classes[k].dimension; ++i) {
        for (std::size_t j = 0; j < classes[l].dimension; ++j) {
          if (k == l && j < i) continue;
          const Derivation f = der.from_vector(-k, classes[k].representatives[i]);
          const Derivation g = der.from_vector(-l, classes[l].representatives[j]);
          Derivation h = lie_bracket(der, f, g);
          h.degree = -k - l;
          SparseVector value = q.reduce(der.to_vector(h));
          if (!value.empty()) out.brackets.push_back(BracketEntry{k, i, l, j, std::move(value)});
        }
      }
    }
  }
  return out;
}

// Same model with one stage per non-base generator, in basis order.
inline Model refine_stages(const Model& model)
{
  const FreeDgAlgebra& a = *model.algebra;
  std::vector<Generator> gens = a.generators();
  int stage = 0;
  for (auto& g : gens) g.stage = g.base ? 0 : ++stage;
  auto out = std::make_shared<FreeDgAlgebra>(a.flavor(), a.grading(), gens);
  out->set_metadata(a.name(), a.description());
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    AlgebraElement dv = out->zero();
    for (const auto& [m, c] : a.differential(static_cast<int>(i)).terms()) dv.add_term(m, c);
    out->set_differential(static_cast<int>(i), std::move(dv));
  }
  Model refined = model;
  refined.algebra = out;
  return refined;
}

}  // namespace dertower
