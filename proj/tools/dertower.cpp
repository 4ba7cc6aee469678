// dertower: command line front end.
//
// Exit status: 0 success, 1 validation or check failure (including model
// parse errors and unsupported model/command combinations), 2 usage error.

#include "dertower/models.hpp"
#include "dertower/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace dertower;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  int window = 10;
  std::string format = "table";
  bool reps = false;
  // der
  std::string base;
  std::string target = "self";
  std::string range;
  // ss
  std::string coefficients = "self";
  std::string pages = "1..6";
  std::string convention;
  bool check_collapse = false;
  bool check_multiplicative = false;
  bool check_first_page = false;
  std::string diag;
  // loop, aut
  bool trace = false;
};

std::pair<int, int> parse_range(const std::string& text, const std::string& what)
{
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError(what + " must look like lo..hi");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw UsageError(what + " is empty");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(what + " must look like lo..hi");
  }
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Model load_model(const std::string& reference)
{
  if (is_builtin_reference(reference)) {
    try {
      return builtin_reference(reference);
    } catch (const UnknownModelError& e) {
      throw UsageError(e.what());
    }
  }
  return parse_model(read_file(reference), reference);
}

class Output {
 public:
  Output(const Options& o, std::string command) : records_(o.format == "records"), command_(std::move(command)), model_(o.model) {}

  bool records() const { return records_; }

  void section(const std::string& title, const Table& table)
  {
    if (records_) return;
    std::cout << "# " << title << "\n" << table.render() << "\n";
  }
  void line(const std::string& text)
  {
    if (!records_) std::cout << text << "\n";
  }
  // Fields after command and model, in the given order.
  void record(json fields)
  {
    if (!records_) return;
    json r;
    r["command"] = command_;
    r["model"] = model_;
    for (auto& [k, v] : fields.items()) r[k] = v;
    std::cout << r.dump() << "\n";
  }

 private:
  bool records_;
  std::string command_;
  std::string model_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

// Refuse to compute on models that fail validation.
void require_valid(const Model& m)
{
  const auto report = validate_model(m);
  if (report.ok()) return;
  std::string detail;
  for (const auto& c : report.checks)
    if (!c.passed) detail += "\n  " + c.name + ": " + c.detail;
  throw CheckFailure("model fails validation:" + detail);
}

Coefficients coefficients_for(const Model& m, const std::string& choice)
{
  if (choice == "self") return Coefficients::self(m.algebra);
  if (choice == "trivial") return Coefficients::trivial(m.algebra);
  const Model u = load_model(choice);
  require_valid(u);
  std::vector<AlgebraElement> images;
  for (const auto& g : m.algebra->generators()) {
    const bool match = u.algebra->has_generator(g.name) &&
                       u.algebra->generator(u.algebra->index_of(g.name)).degree == g.degree;
    images.push_back(match ? u.algebra->gen(g.name) : u.algebra->zero());
  }
  if (u.algebra->flavor() != m.algebra->flavor() || u.algebra->grading() != m.algebra->grading())
    throw CheckFailure("coefficient model must have the same flavor and grading");
  AlgebraMorphism map(m.algebra, u.algebra, std::move(images));
  const auto bad = map.commutation_failures();
  if (!bad.empty()) throw CheckFailure("coefficient map does not commute with d on " + join(bad, ", "));
  return Coefficients::along(std::move(map));
}

std::vector<bool> base_for(const Model& m, const std::string& names)
{
  if (names.empty()) return m.base_mask();
  std::vector<bool> mask(m.algebra->generator_count(), false);
  std::stringstream in(names);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    if (!m.algebra->has_generator(name)) throw UsageError("unknown base generator " + name);
    mask[static_cast<std::size_t>(m.algebra->index_of(name))] = true;
  }
  return mask;
}

json reps_json(const std::vector<std::string>& reps) { return json(reps); }

void degree_table(Output& out, const std::string& title, const std::vector<DegreeDimension>& rows, bool reps)
{
  Table t(reps ? std::vector<std::string>{"degree", "dim", "representatives"} : std::vector<std::string>{"degree", "dim"});
  for (const auto& r : rows) {
    if (reps)
      t.add({std::to_string(r.degree), std::to_string(r.dimension), join(r.representatives, "; ")});
    else
      t.add({std::to_string(r.degree), std::to_string(r.dimension)});
    json f;
    f["degree"] = r.degree;
    f["dimension"] = r.dimension;
    if (reps) f["representatives"] = reps_json(r.representatives);
    out.record(f);
  }
  out.section(title, t);
}

// --- commands -------------------------------------------------------------------

int cmd_validate(const Options& o)
{
  Output out(o, "validate");
  const Model m = load_model(o.model);
  const auto report = validate_model(m);
  Table t({"check", "status", "detail"});
  for (const auto& c : report.checks) {
    t.add({c.name, c.passed ? "pass" : "FAIL", c.detail});
    json f;
    f["check"] = c.name;
    f["passed"] = c.passed;
    f["detail"] = c.detail;
    out.record(f);
  }
  out.section("validation of " + o.model, t);
  out.line(report.ok() ? "all checks pass" : "validation failed");
  return report.ok() ? 0 : 1;
}

int cmd_homology(const Options& o)
{
  Output out(o, "homology");
  const Model m = load_model(o.model);
  require_valid(m);
  if (!m.algebra->enumerable()) throw CheckFailure("the algebra has infinitely many monomials in some degree");
  std::vector<DegreeDimension> rows;
  for (int d = 0; d <= o.window; ++d) {
    const auto h = algebra_homology(*m.algebra, d);
    DegreeDimension r{d, h.dimension, {}};
    if (o.reps)
      for (const auto& e : h.representatives) r.representatives.push_back(m.algebra->to_string(e));
    rows.push_back(std::move(r));
  }
  degree_table(out, std::string(to_string(m.algebra->grading())) + " homology of the algebra", rows, o.reps);
  return 0;
}

int cmd_quillen(const Options& o)
{
  Output out(o, "quillen");
  const Model m = load_model(o.model);
  require_valid(m);
  std::vector<DegreeDimension> rows;
  for (int d = 0; d <= o.window; ++d) rows.push_back(DegreeDimension{d, quillen_homology(*m.algebra, d), {}});
  degree_table(out, "homology of the indecomposables (V, d_(1))", rows, false);
  return 0;
}

int cmd_der(const Options& o)
{
  Output out(o, "der");
  const Model m = load_model(o.model);
  require_valid(m);
  const DerivationComplex der(m.algebra, base_for(m, o.base), coefficients_for(m, o.target));
  if (!der.is_complex()) throw CheckFailure("the base generators do not span a sub dg algebra");
  auto [lo, hi] = o.range.empty() ? std::pair{-o.window, o.window} : parse_range(o.range, "--range");
  lo = std::max(lo, -o.window);
  hi = std::min(hi, o.window);
  if (lo > hi) throw UsageError("--range lies outside the window");
  const Grading g = m.algebra->grading();
  // native degree d of Der is internal degree to_internal_degree(g, d)
  const int plo = std::min(to_internal_degree(g, lo), to_internal_degree(g, hi));
  const int phi = std::max(to_internal_degree(g, lo), to_internal_degree(g, hi));
  const CochainComplex c = der.complex(plo - 1, phi + 1);
  std::vector<DegreeDimension> rows;
  for (int d = lo; d <= hi; ++d) {
    const int p = to_internal_degree(g, d);
    const auto h = homology(c, p);
    DegreeDimension r{d, h.dimension, {}};
    if (o.reps)
      for (const auto& v : h.representatives) r.representatives.push_back(vector_text(c.labels(p), v));
    rows.push_back(std::move(r));
  }
  degree_table(out, std::string("derivation cohomology, ") + to_string(g) + " degrees", rows, o.reps);
  return 0;
}

// Pages, E_infinity and the assembly comparison for a filtered complex.
bool print_pages(Output& out, SpectralSequence& ss, int window, std::pair<int, int> pages,
                 const std::vector<Convention>& conventions, bool reps)
{
  const auto& fc = ss.complex();
  out.line("filtration weights " + std::to_string(ss.smin()) + ".." + std::to_string(ss.smax()) +
           ", E_r = E_inf for r >= " + std::to_string(ss.stable_page()));
  auto headers = [&]() {
    std::vector<std::string> h{"s"};
    for (auto c : conventions) h.push_back(second_label(c) + " [" + to_string(c) + "]");
    h.push_back("n");
    h.push_back("dim");
    return h;
  };
  auto emit = [&](const std::string& page, int s, int n, std::size_t dim, const std::vector<std::string>& rep_text) {
    for (auto c : conventions) {
      const auto [a, b] = label(c, s, n);
      json f;
      f["convention"] = to_string(c);
      f["page"] = page;
      f["s"] = a;
      f["t"] = b;
      f["dimension"] = dim;
      if (reps) f["representatives"] = rep_text;
      out.record(f);
    }
  };
  auto row = [&](int s, int n, std::size_t dim, const std::string& extra) {
    std::vector<std::string> r{std::to_string(s)};
    for (auto c : conventions) r.push_back(std::to_string(label(c, s, n).second));
    r.push_back(std::to_string(n));
    r.push_back(std::to_string(dim) + extra);
    return r;
  };
  auto rep_text = [&](const Subquotient& q, int n) {
    std::vector<std::string> t;
    if (!reps) return t;
    for (const auto& v : q.representatives()) t.push_back(vector_text(fc.complex().labels(n), v));
    return t;
  };
  for (int r = pages.first; r <= pages.second; ++r) {
    Table t(headers());
    for (int s = ss.smin(); s <= ss.smax(); ++s) {
      for (int n = -window; n <= window; ++n) {
        const Subquotient& e = ss.entry(r, s, n);
        if (e.dimension() == 0) continue;
        std::string extra;
        if (n + 1 <= window) {
          const std::size_t rk = rank(ss.differential(r, s, n));
          if (rk > 0) extra = "  (rank d_" + std::to_string(r) + " = " + std::to_string(rk) + ")";
        }
        t.add(row(s, n, e.dimension(), extra));
        emit(std::to_string(r), s, n, e.dimension(), rep_text(e, n));
      }
    }
    std::string bidegrees;
    for (auto c : conventions) {
      const auto [a, b] = differential_bidegree(c, r);
      bidegrees += std::string(bidegrees.empty() ? "" : ", ") + to_string(c) + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    out.section("E_" + std::to_string(r) + " nonzero entries; d_" + std::to_string(r) + " bidegree " + bidegrees, t);
  }
  Table inf(headers());
  for (int s = ss.smin(); s <= ss.smax(); ++s)
    for (int n = -window; n <= window; ++n) {
      const Subquotient& e = ss.e_infinity(s, n);
      if (e.dimension() == 0) continue;
      inf.add(row(s, n, e.dimension(), ""));
      emit("inf", s, n, e.dimension(), rep_text(e, n));
    }
  out.section("E_inf nonzero entries", inf);
  Table total({"n", "sum E_inf", "dim H^n", "agree"});
  bool all = true;
  for (int n = -window; n <= window; ++n) {
    std::size_t assembled = 0;
    for (int s = ss.smin(); s <= ss.smax(); ++s) assembled += ss.e_infinity(s, n).dimension();
    const std::size_t direct = ss.total_dimension(n);
    all = all && assembled == direct;
    total.add({std::to_string(n), std::to_string(assembled), std::to_string(direct), assembled == direct ? "yes" : "NO"});
    json f;
    f["convention"] = "total";
    f["degree"] = n;
    f["dimension"] = direct;
    f["assembled"] = assembled;
    out.record(f);
  }
  out.section("assembly of E_inf against the total complex", total);
  return all;
}

std::vector<Convention> conventions_for(const Options& o)
{
  if (o.convention.empty()) return {Convention::paper2, Convention::paper3};
  const auto c = parse_convention(o.convention);
  if (!c) throw UsageError("unknown convention " + o.convention);
  return {*c};
}

int cmd_ss(const Options& o)
{
  Output out(o, "ss");
  Model m = load_model(o.model);
  require_valid(m);
  const auto pages = parse_range(o.pages, "--pages");
  if (pages.first < 1) throw UsageError("pages start at 1");
  const auto conventions = conventions_for(o);
  const int W = o.window;
  bool ok = true;

  std::optional<DerivationComplex> der;
  FilteredComplex fc;
  if (o.coefficients == "cone") {
    if (!m.is_adams_hilton()) throw CheckFailure("cone coefficients need an associative homological model");
    fc = ConeComplex(m.algebra).filtered(-W - 2, W + 2);
  } else {
    const std::string choice = o.coefficients.rfind("target=", 0) == 0 ? o.coefficients.substr(7) : o.coefficients;
    if (choice.empty()) throw UsageError("--coefficients target=PATH needs a path");
    if (choice != o.coefficients || choice == "self" || choice == "trivial")
      der.emplace(m.algebra, m.base_mask(), coefficients_for(m, choice));
    else
      throw UsageError("unknown coefficients " + o.coefficients);
    if (!der->is_complex()) throw CheckFailure("the base generators do not span a sub dg algebra");
    fc = filtered_derivations(*der, -W - 2, W + 2);
  }
  SpectralSequence ss(fc, -W, W);
  ok = print_pages(out, ss, W, pages, conventions, o.reps) && ok;

  if (o.check_first_page) {
    if (!der) throw CheckFailure("the first page check needs derivation coefficients");
    const auto report = first_page_law(*der, fc, ss, -W, W);
    Table t({"s", "n", "hom(V_s,H(U))", "E_1", "basis", "d_1"});
    for (const auto& e : report.entries) {
      if (e.predicted == 0 && e.engine == 0) continue;
      t.add({std::to_string(e.s), std::to_string(e.n), std::to_string(e.predicted), std::to_string(e.engine),
             e.basis_agrees ? "ok" : "differs", e.d1_agrees ? "ok" : "differs"});
    }
    out.section("first page against hom(V_s, H(U)) with d_1 = -(-1)^n hom(d_(1), 1)", t);
    out.line(std::string("first page law: ") + (report.holds() ? "holds" : "does not hold"));
    json f;
    f["convention"] = "check";
    f["check"] = "first-page";
    f["passed"] = report.holds();
    out.record(f);
  }
  if (o.check_collapse) {
    if (!der) throw CheckFailure("the collapse check needs derivation coefficients");
    const auto report = collapse_report(*der, ss, -W, W);
    bool e2_inf = true;
    for (int s = ss.smin(); s <= ss.smax(); ++s)
      for (int n = -W; n <= W; ++n) e2_inf = e2_inf && ss.dimension(2, s, n) == ss.e_infinity(s, n).dimension();
    if (!report.applicable) {
      out.line("collapse: not applicable (stages differ from |degree|)");
    } else {
      out.line("collapse: H(U) between degrees " + std::to_string(report.k) + " and " +
               (report.b_known ? std::to_string(report.b) : std::string("the window edge")));
      out.line("collapse: " + std::to_string(report.predicted_zero_cells) + " cells predicted zero, " +
               std::to_string(report.vanishing_failures.size()) + " violations");
      for (const auto& f : report.vanishing_failures) out.line("  " + f);
      out.line(std::string("collapse: degeneration at E_2 ") + (report.degenerates_predicted ? "predicted" : "not predicted"));
    }
    out.line(std::string("collapse: computed E_2 = E_inf: ") + (e2_inf ? "yes" : "no"));
    const bool consistent = report.holds() && (!report.degenerates_predicted || e2_inf);
    out.line(std::string("collapse verdict: ") + (consistent ? "consistent with computed pages" : "INCONSISTENT"));
    json f;
    f["convention"] = "check";
    f["check"] = "collapse";
    f["applicable"] = report.applicable;
    f["degeneration_predicted"] = report.degenerates_predicted;
    f["e2_equals_einf"] = e2_inf;
    f["passed"] = consistent;
    out.record(f);
    ok = ok && consistent;
  }
  if (o.check_multiplicative) {
    if (!m.is_adams_hilton()) throw CheckFailure("convolution products need an associative homological model");
    if (!o.diag.empty()) {
      const Model d = load_model(o.diag);
      m.diagonal.clear();
      for (const auto& [g, terms] : d.diagonal) {
        const std::string& name = d.algebra->generator(g).name;
        if (!m.algebra->has_generator(name)) throw CheckFailure("diagonal names unknown generator " + name);
        for (auto t : terms) {
          t.left = m.algebra->index_of(d.algebra->generator(t.left).name);
          t.right = m.algebra->index_of(d.algebra->generator(t.right).name);
          m.diagonal[m.algebra->index_of(name)].push_back(t);
        }
      }
    }
    const ConvolutionAlgebra conv(m);
    const int top = top_cell_dimension(*m.algebra);
    const auto diag_bad = conv.diagonal_failures();
    const auto bad = diag_bad.empty() ? leibniz_failures(conv, -top, W - top) : std::vector<std::string>{};
    for (const auto& b : diag_bad) out.line("diagonal: " + b);
    for (const auto& b : bad) out.line("Leibniz fails: " + b);
    const bool passed = diag_bad.empty() && bad.empty();
    out.line(std::string("d_1 Leibniz rule for the convolution product: ") + (passed ? "holds" : "fails"));
    json f;
    f["convention"] = "check";
    f["check"] = "multiplicative";
    f["passed"] = passed;
    out.record(f);
    ok = ok && passed;
  }
  return ok ? 0 : 1;
}

int cmd_loop(const Options& o)
{
  Output out(o, "loop");
  const Model m = load_model(o.model);
  require_valid(m);
  if (!m.is_adams_hilton()) throw CheckFailure("loop homology needs an associative homological model");
  const auto rows = loop_homology(m, o.window, o.reps);
  degree_table(out, "H_*(LX)", rows, o.reps);
  if (!o.trace) return 0;

  // Engine on the cone; loop degree L is cone internal degree m - L.
  const int top = top_cell_dimension(*m.algebra);
  const int nlo = top - o.window, nhi = top;
  const ConeComplex cone(m.algebra);
  const FilteredComplex fc = cone.filtered(nlo - 2, nhi + 2);
  SpectralSequence ss(fc, nlo, nhi);
  std::map<int, std::size_t> betti{{0, 1}};
  if (m.expected_homology)
    for (const auto& [d, k] : *m.expected_homology) betti[d] += k;
  else
    for (const auto& g : m.algebra->generators()) betti[g.degree + 1] += 1;
  Table t({"s", "t", "E_2", "hom(H_s X, H_t QX)"});
  bool e2_ok = true;
  for (int s = ss.smin(); s <= ss.smax(); ++s)
    for (int n = nlo; n <= nhi; ++n) {
      const int tdeg = s - n;  // H_t of the loop space algebra
      const std::size_t predicted = betti.count(s) ? betti[s] * algebra_homology(*m.algebra, tdeg).dimension : 0;
      const std::size_t e2 = ss.dimension(2, s, n);
      if (e2 == 0 && predicted == 0) continue;
      e2_ok = e2_ok && e2 == predicted;
      t.add({std::to_string(s), std::to_string(tdeg), std::to_string(e2), std::to_string(predicted)});
    }
  out.section("E_2 of the cone filtration against hom(H_s(X), H_t(QX))", t);
  out.line(std::string("E_2 comparison: ") + (e2_ok ? "agrees" : "differs"));
  Table agree({"L", "sum E_inf", "direct"});
  bool ok = true;
  for (const auto& r : rows) {
    const int n = top - r.degree;
    std::size_t assembled = 0;
    for (int s = ss.smin(); s <= ss.smax(); ++s) assembled += ss.e_infinity(s, n).dimension();
    ok = ok && assembled == r.dimension;
    agree.add({std::to_string(r.degree), std::to_string(assembled), std::to_string(r.dimension)});
  }
  out.section("engine route against the cone", agree);
  out.line(std::string("engine route: ") + (ok ? "agrees" : "differs"));
  return ok ? 0 : 1;
}

int cmd_aut(const Options& o)
{
  Output out(o, "aut");
  const Model m = load_model(o.model);
  require_valid(m);
  const auto r = aut_homotopy(m, o.window, o.reps);
  degree_table(out, "pi_n(aut_1) ⊗ Q = H^{-n}(Der)", r.groups, o.reps);
  Table b({"[a, b]", "degree", "value"});
  for (const auto& e : r.brackets) {
    std::vector<std::string> coords;
    for (const auto& [i, c] : e.value) coords.push_back(to_string(c) + " * c" + std::to_string(e.left_degree + e.right_degree) + "_" + std::to_string(i));
    const std::string name = "[c" + std::to_string(e.left_degree) + "_" + std::to_string(e.left) + ", c" +
                             std::to_string(e.right_degree) + "_" + std::to_string(e.right) + "]";
    b.add({name, std::to_string(e.left_degree + e.right_degree), join(coords, " + ")});
    json f;
    f["bracket"] = name;
    f["degree"] = e.left_degree + e.right_degree;
    f["value"] = join(coords, " + ");
    out.record(f);
  }
  if (b.empty())
    out.line("all brackets of basis classes vanish in the window");
  else
    out.section("brackets of basis classes (c<degree>_<index>)", b);
  if (!o.trace) return 0;
  const DerivationComplex der(m.algebra, m.base_mask(), Coefficients::self(m.algebra));
  const FilteredComplex fc = filtered_derivations(der, -o.window - 2, o.window + 2);
  SpectralSequence ss(fc, -o.window, o.window);
  const bool ok = print_pages(out, ss, o.window, {2, 2}, {Convention::paper3, Convention::sullivan_labels}, false);
  return ok ? 0 : 1;
}

int cmd_hochschild(const Options& o)
{
  Output out(o, "hochschild");
  const Model m = load_model(o.model);
  require_valid(m);
  if (m.algebra->flavor() != Flavor::associative) throw CheckFailure("the cone needs an associative model");
  auto rows = cone_cohomology(m, -o.window, o.window, o.reps);
  for (auto& r : rows) r.degree = to_native_degree(m.algebra->grading(), r.degree);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
  degree_table(out, std::string("cohomology of the cone of ad, ") + to_string(m.algebra->grading()) + " degrees", rows, o.reps);
  return 0;
}

void add_common(CLI::App* sub, Options& o)
{
  sub->add_option("model", o.model, "model file, or builtin:NAME")->required();
  sub->add_option("--max-degree,--window", o.window, "degree window")->check(CLI::Range(1, 1000));
  sub->add_option("--format", o.format, "table or records")->check(CLI::IsMember({"table", "records"}));
  sub->add_flag("--reps", o.reps, "print representatives");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"dertower: derivation complexes, tower spectral sequences, loop homology and aut_1"};
  app.require_subcommand(1, 1);
  std::string builtins = join(builtin_names(), ", ");
  app.footer("builtins: " + builtins);
  Options o;

  auto* validate = app.add_subcommand("validate", "check d^2 = 0, stages, degrees and declared homology");
  auto* homology = app.add_subcommand("homology", "homology of the underlying complex");
  auto* quillen = app.add_subcommand("quillen", "homology of the indecomposables");
  auto* der = app.add_subcommand("der", "cohomology of the derivation complex");
  auto* ss = app.add_subcommand("ss", "tower spectral sequence pages");
  auto* loop = app.add_subcommand("loop", "free loop space homology of an associative model");
  auto* aut = app.add_subcommand("aut", "rational homotopy of aut_1");
  auto* hochschild = app.add_subcommand("hochschild", "cohomology of the cone of ad");
  for (auto* sub : {validate, homology, quillen, der, ss, loop, aut, hochschild}) add_common(sub, o);

  der->add_option("--base", o.base, "comma separated base generators (default: flagged ones)");
  der->add_option("--target", o.target, "self, trivial or a model file for U");
  der->add_option("--range", o.range, "degree range lo..hi");
  ss->add_option("--coefficients", o.coefficients, "self, trivial, cone or target=PATH");
  ss->add_option("--pages", o.pages, "page range a..b");
  ss->add_option("--convention", o.convention, "paper2, paper3 or sullivan-labels (default: paper2 and paper3)");
  ss->add_flag("--check-collapse", o.check_collapse, "check vanishing regions and degeneration");
  ss->add_flag("--check-multiplicative", o.check_multiplicative, "check the d_1 Leibniz rule for convolution");
  ss->add_flag("--check-first-page", o.check_first_page, "compare E_1 with hom(V_s, H(U))");
  ss->add_option("--diag", o.diag, "model file whose diag lines replace the model's diagonal");
  loop->add_flag("--trace", o.trace, "run the spectral sequence on the cone as well");
  aut->add_flag("--trace", o.trace, "print E_2 and the assembly check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*homology) return cmd_homology(o);
    if (*quillen) return cmd_quillen(o);
    if (*der) return cmd_der(o);
    if (*ss) return cmd_ss(o);
    if (*loop) return cmd_loop(o);
    if (*aut) return cmd_aut(o);
    if (*hochschild) return cmd_hochschild(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << o.model << ": " << e.what() << "\n";
    return 1;
  } catch (const CheckFailure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
