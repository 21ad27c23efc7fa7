#include "koszul/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "koszul/problem.hpp"
#include "koszul/report.hpp"

namespace koszul::cli {

namespace {

struct Outcome {
  Json json;
  std::string text;
  int code = kExitOk;
};

struct ProblemOptions {
  std::string file;
  std::optional<int> n;
  std::vector<int> n_range;
  std::optional<int> n_max;
  std::optional<int> degree_bound;
  std::optional<std::uint32_t> characteristic;
};

struct Loaded {
  Problem problem;
  std::string text;
  std::vector<int> ns;
  int degree_bound = 0;
};

Limits resource_limits(std::optional<long long> flag) {
  long long v = kDefaultMaxDim;
  if (flag) {
    v = *flag;
  } else if (const char* env = std::getenv("KOSZUL_MAX_DIM"); env && *env) {
    try {
      std::size_t used = 0;
      v = std::stoll(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ValidationError(std::string("KOSZUL_MAX_DIM is not an integer: '") + env + "'");
    }
  }
  if (v <= 0) throw ValidationError("the dimension guard must be positive");
  return Limits{static_cast<Index>(v)};
}

Loaded load(const ProblemOptions& o, bool needs_n) {
  Loaded l;
  auto [source, text] = load_problem_text(o.file);
  l.text = text;
  l.problem = parse_problem(text, source);
  if (o.characteristic) l.problem = with_characteristic(l.problem, *o.characteristic);
  const TaskSpec& t = l.problem.task;
  if (o.n) {
    l.ns = {*o.n};
  } else if (!o.n_range.empty()) {
    for (int n = o.n_range[0]; n <= o.n_range[1]; ++n) l.ns.push_back(n);
  } else if (t.n_range) {
    for (int n = t.n_range->first; n <= t.n_range->second; ++n) l.ns.push_back(n);
  } else if (t.n) {
    l.ns = {*t.n};
  }
  if (needs_n && l.ns.empty()) throw ValidationError("no sym-degree given: pass --n or set task.n in the problem file");
  for (int n : l.ns)
    if (n < 0) throw ValidationError("sym-degree n must be nonnegative");
  if (o.degree_bound)
    l.degree_bound = *o.degree_bound;
  else if (t.degree_bound)
    l.degree_bound = *t.degree_bound;
  else
    throw ValidationError("no degree bound given: pass --degree-bound or set task.degree_bound");
  return l;
}

Json problem_header(const std::string& command, const Loaded& l) {
  Json j = report_header(command, l.text);
  j["problem"] = l.problem.source;
  j["field"] = Json{{"characteristic", l.problem.algebra->field.characteristic}};
  j["degree_bound"] = l.degree_bound;
  if (l.problem.regular_ideal)
    j["presentation"] = Json{{"ok", l.problem.regular_ideal->presentation_ok},
                             {"diagnostic", l.problem.regular_ideal->diagnostic}};
  return j;
}

std::string problem_banner(const Loaded& l) {
  std::ostringstream s;
  const auto ch = l.problem.algebra->field.characteristic;
  s << l.problem.source << " over " << (ch == 0 ? std::string("Q") : "F_" + std::to_string(ch)) << "\n";
  if (l.problem.regular_ideal && !l.problem.regular_ideal->presentation_ok)
    s << "warning: " << l.problem.regular_ideal->diagnostic << "\n";
  return s.str();
}

// Runs f(field, algebra) with the problem's base field.
template <class F>
Outcome on_field(const Loaded& l, const Limits& limits, F&& f) {
  return visit_field(l.problem.algebra->field, [&](auto field) -> Outcome {
    using S = typename decltype(field)::Scalar;
    auto alg = std::make_shared<const GradedAlgebra<S>>(l.problem.algebra, field, limits);
    return f(field, alg);
  });
}

Outcome homology(const Loaded& l, const Limits& limits) {
  return on_field(l, limits, [&](auto field, auto alg) {
    using S = typename decltype(field)::Scalar;
    Outcome o{problem_header("homology", l), problem_banner(l)};
    Json reports = Json::array();
    for (int n : l.ns) {
      RelativeKoszul<S> k(l.problem.module, n, alg);
      const HomologyReport r = homology_table(k, l.degree_bound);
      reports.push_back(to_json(r));
      o.text += render(r);
    }
    o.json["reports"] = reports;
    return o;
  });
}

Outcome cartan(const Loaded& l, const Limits& limits) {
  return on_field(l, limits, [&](auto field, auto alg) {
    using S = typename decltype(field)::Scalar;
    Outcome o{problem_header("cartan", l), problem_banner(l)};
    Json reports = Json::array();
    for (int n : l.ns) {
      RelativeKoszul<S> k(l.problem.module, n, alg);
      const CartanReport r = cartan_check(k, l.degree_bound);
      if (!r.holds()) o.code = kExitViolation;
      reports.push_back(to_json(r));
      o.text += render(r);
    }
    o.json["reports"] = reports;
    return o;
  });
}

Outcome homotopy(const Loaded& l, const Limits& limits) {
  return on_field(l, limits, [&](auto field, auto alg) {
    using S = typename decltype(field)::Scalar;
    Outcome o{problem_header("homotopy", l), problem_banner(l)};
    Json reports = Json::array();
    for (int n : l.ns) {
      RelativeKoszul<S> k(l.problem.module, n, alg);
      const HomotopyReport r = homotopy_triviality_check(k, l.degree_bound);
      if (!r.holds() || !r.consistent_with_homology) o.code = kExitViolation;
      reports.push_back(to_json(r));
      o.text += render(r);
    }
    o.json["reports"] = reports;
    return o;
  });
}

Outcome scan(const Loaded& l, const Limits& limits, std::optional<int> n_max) {
  int top = 0;
  if (n_max)
    top = *n_max;
  else if (!l.ns.empty())
    top = *std::max_element(l.ns.begin(), l.ns.end());
  else
    throw ValidationError("no scan range given: pass --n-max or set task.n_range");
  if (top < 1) throw ValidationError("--n-max must be at least 1");
  return on_field(l, limits, [&](auto, auto alg) {
    Outcome o{problem_header("scan", l), problem_banner(l)};
    const ScanSummary s = acyclicity_scan(l.problem.module, alg, top, l.degree_bound);
    if (s.top_homology_vanishes && !*s.top_homology_vanishes) o.code = kExitViolation;
    o.json["scan"] = to_json(s);
    o.text += render(s);
    return o;
  });
}

Outcome global_homology(const Loaded& l, const Limits& limits) {
  return visit_field(l.problem.algebra->field, [&](auto field) -> Outcome {
    using S = typename decltype(field)::Scalar;
    const RelativeSetup setup = make_relative_setup(l.problem.module);
    auto total = std::make_shared<const GradedAlgebra<S>>(setup.total, field, limits);
    Outcome o{problem_header("global-homology", l), problem_banner(l)};
    Json reports = Json::array();
    for (int n : l.ns) {
      GlobalKoszul<S> g(setup, n, total);
      const GlobalHomologyReport r = global_homology_table(g, l.degree_bound);
      if (r.cartan && !r.cartan->holds()) o.code = kExitViolation;
      if (r.homotopy && (!r.homotopy->holds() || !r.homotopy->consistent_with_homology)) o.code = kExitViolation;
      reports.push_back(to_json(r));
      o.text += render(r.homology);
      if (r.cartan) o.text += render(*r.cartan);
      if (r.homotopy)
        o.text += "Homotopy h = d/" + std::to_string(n) + ": " + (r.homotopy->holds() ? "contracts" : "FAILS") + "\n";
    }
    o.json["reports"] = reports;
    return o;
  });
}

// dim H^q(P^r, Ω^p(n)) for every q, p, n.
long long bott_value(int r, int p, int n, int q) {
  if (r < 0) throw ValidationError("r must be nonnegative");
  if (p < 0 || p > r || q < 0 || q > r) return 0;
  if (n == 0) return q == p ? bott_h_diag(r, p) : 0;
  if (q == 0 && n > 0) return bott_h0(r, p, n);
  if (q == r && n < 0) return bott_hr(r, p, -n);
  return 0;
}

std::string args_digest_input(const std::string& command, const std::vector<std::pair<std::string, long long>>& kv) {
  std::string s = command;
  for (const auto& [k, v] : kv) s += " " + k + "=" + std::to_string(v);
  return s;
}

Outcome bott(int r, int p, int n, int q) {
  const std::string in = args_digest_input("bott", {{"r", r}, {"p", p}, {"n", n}, {"q", q}});
  Outcome o{report_header("bott", in), ""};
  const long long v = bott_value(r, p, n, q);
  o.json.update(Json{{"r", r}, {"p", p}, {"n", n}, {"q", q}, {"value", v}});
  o.text = std::to_string(v) + "\n";
  return o;
}

Outcome verdier(int r, int p, int n) {
  if (n <= 0) throw ValidationError("verdier needs n > 0");
  const std::string in = args_digest_input("verdier", {{"r", r}, {"p", p}, {"n", n}});
  Outcome o{report_header("verdier", in), ""};
  const DimensionResult s = verdier_sum(r, p, n);
  const long long closed = bott_h0(r, p, n);
  if (s.value != closed) o.code = kExitViolation;
  o.json.update(Json{{"r", r}, {"p", p}, {"n", n}, {"sum", to_json(s)}, {"closed_form", closed}, {"equal", s.value == closed}});
  o.text = render(s) + "closed form C(n+r-p,n)C(n-1,p) = " + std::to_string(closed) +
           (s.value == closed ? " (equal)\n" : " (MISMATCH)\n");
  return o;
}

Outcome identity(int r_max, int n_max) {
  if (r_max < 0 || n_max < 1) throw ValidationError("--grid needs R >= 0 and N >= 1");
  const std::string in = args_digest_input("identity", {{"r_max", r_max}, {"n_max", n_max}});
  Outcome o{report_header("identity", in), ""};
  struct Tally {
    const char* name;
    long long checked = 0;
    Json failures = Json::array();
  };
  Tally binomial{"binomial_identity"}, ver{"verdier_equals_closed_form"}, dual{"serre_duality_symmetry"};
  for (int r = 0; r <= r_max; ++r)
    for (int n = 1; n <= n_max; ++n)
      for (int p = 0; p <= r + 1; ++p) {
        const Json at{{"r", r}, {"p", p}, {"n", n}};
        ++binomial.checked;
        if (!binomial_identity_check(r, p, n)) binomial.failures.push_back(at);
        if (p > r) continue;
        ++ver.checked;
        if (verdier_sum(r, p, n).value != bott_h0(r, p, n)) ver.failures.push_back(at);
        ++dual.checked;
        if (bott_hr(r, p, n) != bott_h0(r, r - p, n)) dual.failures.push_back(at);
      }
  Json checks = Json::object();
  for (Tally* t : {&binomial, &ver, &dual}) {
    const bool ok = t->failures.empty();
    if (!ok) o.code = kExitViolation;
    checks[t->name] = Json{{"checked", t->checked}, {"all_true", ok}, {"failures", t->failures}};
    o.text += std::string(t->name) + ": " + std::to_string(t->checked - static_cast<long long>(t->failures.size())) +
              "/" + std::to_string(t->checked) + (ok ? " true\n" : " FAILED\n");
  }
  o.json.update(Json{{"r_max", r_max}, {"n_max", n_max}, {"checks", checks}});
  return o;
}

Outcome k_dim(int r, int p, int n, std::uint32_t characteristic) {
  if (r < 0) throw ValidationError("r must be nonnegative");
  const std::string in =
      args_digest_input("k-dim", {{"r", r}, {"p", p}, {"n", n}, {"characteristic", characteristic}});
  Outcome o{report_header("k-dim", in), ""};
  const long long engine =
      visit_field(FieldSpec{characteristic}, [&](auto field) { return k_dim_engine(r, p, n, field); });
  const long long closed = bott_h0(r, p, n);
  if (engine != closed) o.code = kExitViolation;
  o.json.update(Json{{"r", r},
                     {"p", p},
                     {"n", n},
                     {"field", Json{{"characteristic", characteristic}}},
                     {"kernel_dim", engine},
                     {"closed_form", closed},
                     {"equal", engine == closed}});
  o.text = "dim K_{" + std::to_string(p) + "," + std::to_string(n) + "} = " + std::to_string(engine) +
           "; C(n+r-p,n)C(n-1,p) = " + std::to_string(closed) + (engine == closed ? " (equal)\n" : " (MISMATCH)\n");
  return o;
}

struct BundleOptions {
  std::string table_file;
  std::vector<int> point;
  int q = 0;
  int p = 0;
  bool negative = false;
  bool hodge = false;
  std::vector<long long> structure;
};

std::pair<BundleCohomologyTable, std::string> bundle_table(const BundleOptions& b) {
  if (!b.point.empty()) {
    if (!b.table_file.empty()) throw ValidationError("give either a table file or --point, not both");
    return {point_table(b.point[0], b.point[1]),
            "point r=" + std::to_string(b.point[0]) + " n=" + std::to_string(b.point[1])};
  }
  if (b.table_file.empty()) throw ValidationError("a table file or --point R N is required");
  std::ifstream in(b.table_file, std::ios::binary);
  if (!in) throw ParseError("cannot open table file '" + b.table_file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return {parse_bundle_table(ss.str()), ss.str()};
}

Outcome dimension_outcome(const std::string& command, const std::string& input, const BundleOptions& b,
                          const DimensionResult& d) {
  Outcome o{report_header(command, input), render(d)};
  o.json.update(Json{{"q", b.q}, {"p", b.p}, {"negative", b.negative}, {"result", to_json(d)}});
  return o;
}

Outcome bundle_rel(const BundleOptions& b) {
  if (!b.structure.empty()) {
    std::string in = "bundle-rel untwisted";
    for (long long s : b.structure) in += " " + std::to_string(s);
    in += " q=" + std::to_string(b.q) + " p=" + std::to_string(b.p);
    const long long v = relative_untwisted(b.structure, b.q, b.p);
    Outcome o{report_header("bundle-rel", in), std::to_string(v) + "\n"};
    o.json.update(Json{{"q", b.q}, {"p", b.p}, {"untwisted", true}, {"value", v}});
    return o;
  }
  auto [table, input] = bundle_table(b);
  const DimensionResult d = b.negative ? relative_bundle_cohomology_negative(table, b.q, b.p)
                                       : relative_bundle_cohomology(table, b.q, b.p);
  return dimension_outcome("bundle-rel", input, b, d);
}

Outcome bundle_abs(const BundleOptions& b) {
  auto [table, input] = bundle_table(b);
  if (b.hodge) {
    if (b.negative) throw ValidationError("--hodge and --negative are exclusive");
    return dimension_outcome("bundle-abs", input, b, hodge_sum(table.h, table.r, b.q, b.p));
  }
  const DimensionResult d = b.negative ? absolute_bundle_cohomology_negative(table, b.q, b.p)
                                       : absolute_bundle_cohomology(table, b.q, b.p);
  return dimension_outcome("bundle-abs", input, b, d);
}

Outcome examples(const std::string& name) {
  if (!name.empty()) {
    auto text = bundled_problem(name);
    if (!text) throw ValidationError("no bundled example named '" + name + "'");
    Outcome o{report_header("examples", *text), *text};
    o.json["name"] = name;
    o.json["document"] = Json::parse(*text);
    return o;
  }
  Outcome o{report_header("examples", ""), ""};
  Json list = Json::array();
  for (const auto& [n, text] : bundled_problems()) {
    list.push_back(Json{{"name", n}, {"digest", "fnv1a64:" + digest(text)}});
    o.text += n + "\n";
  }
  o.json["examples"] = list;
  return o;
}

void add_problem_options(CLI::App* sub, ProblemOptions& o, bool scan) {
  sub->add_option("problem", o.file, "problem file, or the name of a bundled example")->required();
  if (scan) {
    sub->add_option("--n-max", o.n_max, "scan n = 1 .. N");
  } else {
    sub->add_option("--n", o.n, "sym-degree n");
    sub->add_option("--n-range", o.n_range, "first and last n")->expected(2);
  }
  sub->add_option("--degree-bound", o.degree_bound, "largest internal degree computed");
  sub->add_option("--characteristic", o.characteristic, "override the field characteristic (0 or a prime)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul and de Rham complexes of graded modules, computed degree by degree", "koszul"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::optional<long long> max_dim;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-dim", max_dim, "largest ambient piece dimension (default KOSZUL_MAX_DIM or 5000)");
  app.set_version_flag("--version", version());

  ProblemOptions po;
  auto* homology_cmd = app.add_subcommand("homology", "homology table of Kos(M)_n");
  auto* cartan_cmd = app.add_subcommand("cartan", "check d i_D + i_D d = n on every slice");
  auto* homotopy_cmd = app.add_subcommand("homotopy", "check that d/n contracts Kos(M)_n");
  auto* scan_cmd = app.add_subcommand("scan", "acyclicity scan over n and the top-homology check");
  auto* global_cmd = app.add_subcommand("global-homology", "homology of [Omega_{B/k}]_n");
  for (auto* sub : {homology_cmd, cartan_cmd, homotopy_cmd, global_cmd}) add_problem_options(sub, po, false);
  add_problem_options(scan_cmd, po, true);

  int r = 0, p = 0, n = 0, q = 0;
  auto* bott_cmd = app.add_subcommand("bott", "dim H^q(P^r, Omega^p(n))");
  bott_cmd->add_option("--r", r)->required();
  bott_cmd->add_option("--p", p)->required();
  bott_cmd->add_option("--n", n)->required();
  bott_cmd->add_option("--q", q, "cohomological degree (default 0)");

  auto* verdier_cmd = app.add_subcommand("verdier", "alternating binomial sum against the closed form");
  verdier_cmd->add_option("--r", r)->required();
  verdier_cmd->add_option("--p", p)->required();
  verdier_cmd->add_option("--n", n)->required();

  std::vector<int> grid;
  auto* identity_cmd = app.add_subcommand("identity", "binomial, alternating-sum and duality identities on a grid");
  identity_cmd->add_option("--grid", grid, "R N: r <= R, 1 <= n <= N")->expected(2)->required();

  std::uint32_t kdim_char = 0;
  auto* kdim_cmd = app.add_subcommand("k-dim", "dim ker i_D on Kos(k^{r+1})_n against the closed form");
  kdim_cmd->add_option("--r", r)->required();
  kdim_cmd->add_option("--p", p)->required();
  kdim_cmd->add_option("--n", n)->required();
  kdim_cmd->add_option("--characteristic", kdim_char);

  BundleOptions bo;
  auto* rel_cmd = app.add_subcommand("bundle-rel", "dim H^q(P, Omega^p_{P/X}(+-n)) from a cohomology table");
  auto* abs_cmd = app.add_subcommand("bundle-abs", "dim H^q(P, Omega^p_{P/k}(+-n)) from a cohomology table");
  for (auto* sub : {rel_cmd, abs_cmd}) {
    sub->add_option("table", bo.table_file, "table file");
    sub->add_option("--point", bo.point, "R N: use the table of a point")->expected(2);
    sub->add_option("--q", bo.q)->required();
    sub->add_option("--p", bo.p)->required();
    sub->add_flag("--negative", bo.negative, "negative twist; for bundle-rel the table describes E*");
  }
  rel_cmd->add_option("--structure", bo.structure, "dim H^i(X, O) for i = 0..; untwisted case");
  abs_cmd->add_flag("--hodge", bo.hodge, "table entries are dim H^q(X, Omega^j); untwisted case");

  std::string example;
  auto* examples_cmd = app.add_subcommand("examples", "list bundled problems or print one");
  examples_cmd->add_option("name", example);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const Limits limits = resource_limits(max_dim);
    Outcome o;
    if (homology_cmd->parsed())
      o = homology(load(po, true), limits);
    else if (cartan_cmd->parsed())
      o = cartan(load(po, true), limits);
    else if (homotopy_cmd->parsed())
      o = homotopy(load(po, true), limits);
    else if (scan_cmd->parsed())
      o = scan(load(po, false), limits, po.n_max);
    else if (global_cmd->parsed())
      o = global_homology(load(po, true), limits);
    else if (bott_cmd->parsed())
      o = bott(r, p, n, q);
    else if (verdier_cmd->parsed())
      o = verdier(r, p, n);
    else if (identity_cmd->parsed())
      o = identity(grid[0], grid[1]);
    else if (kdim_cmd->parsed())
      o = k_dim(r, p, n, kdim_char);
    else if (rel_cmd->parsed())
      o = bundle_rel(bo);
    else if (abs_cmd->parsed())
      o = bundle_abs(bo);
    else
      o = examples(example);
    out << (format == "json" ? dump(o.json) : o.text);
    return o.code;
  } catch (const ResourceLimitExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalError& e) {
    err << "identity violated: " << e.what() << "\n";
    return kExitViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace koszul::cli
