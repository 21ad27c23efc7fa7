#include "koszul/report.hpp"

#include <iomanip>
#include <sstream>

#include "koszul/problem.hpp"

#ifndef KOSZUL_VERSION
#define KOSZUL_VERSION "0.0.0"
#endif

namespace koszul {

std::string version() { return KOSZUL_VERSION; }

Json report_header(const std::string& command, std::string_view input) {
  return Json{{"tool", "koszul"}, {"version", version()}, {"command", command}, {"input_digest", "fnv1a64:" + digest(input)}};
}

namespace {

Json to_json(const std::optional<IdentityViolation>& v) {
  if (!v) return nullptr;
  return Json{{"p", v->p}, {"degree", v->degree}, {"detail", v->detail}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string range_line(int lo, int hi, bool complete) {
  std::ostringstream s;
  s << "internal degrees " << lo << ".." << hi << (complete ? " (all nonzero pieces covered)" : " (truncated)");
  return s.str();
}

}  // namespace

Json to_json(const HomologyReport& r) {
  Json rows = Json::array();
  for (const HomologyRow& row : r.rows)
    rows.push_back(Json{{"degree", row.degree},
                        {"term_dims", row.term_dims},
                        {"ranks", row.ranks},
                        {"homology", row.homology},
                        {"euler", row.euler}});
  return Json{{"n", r.n},
              {"top", r.top},
              {"degree_min", r.degree_min},
              {"degree_bound", r.degree_bound},
              {"complete", r.complete},
              {"higher_homology_vanishes", r.higher_vanishes()},
              {"cokernel_vanishes", r.cokernel_vanishes()},
              {"acyclic_within_range", r.acyclic()},
              {"rows", rows}};
}

Json to_json(const CartanReport& r) {
  return Json{{"n", r.n},
              {"n_in_field", r.scalar},
              {"degree_min", r.degree_min},
              {"degree_bound", r.degree_bound},
              {"slices_checked", r.slices_checked},
              {"squares_vanish", r.squares_vanish},
              {"holds", r.holds()},
              {"violation", to_json(r.violation)}};
}

Json to_json(const HomotopyReport& r) {
  return Json{{"n", r.n},
              {"degree_min", r.degree_min},
              {"degree_bound", r.degree_bound},
              {"slices_checked", r.slices_checked},
              {"holds", r.holds()},
              {"consistent_with_homology", r.consistent_with_homology},
              {"violation", to_json(r.violation)},
              {"homology", to_json(r.homology)}};
}

Json to_json(const GeneratorCount& g) {
  Json by = Json::object();
  for (const auto& [d, c] : g.by_degree) by[std::to_string(d)] = c;
  return Json{{"count", g.count}, {"possible_undercount", g.possible_undercount}, {"by_degree", by}};
}

Json to_json(const ScanSummary& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  Json witnesses = Json::array();
  for (const auto& w : s.nonzero_homology)
    witnesses.push_back(Json{{"n", w.n}, {"p", w.p}, {"degree", w.degree}, {"dim", w.dim}});
  return Json{{"n_max", s.n_max},
              {"degree_bound", s.degree_bound},
              {"reports", reports},
              {"largest_non_acyclic_n", s.largest_non_acyclic ? Json(*s.largest_non_acyclic) : Json(nullptr)},
              {"nonzero_homology", witnesses},
              {"minimal_generators", to_json(s.mu)},
              {"top_homology_vanishes", s.top_homology_vanishes ? Json(*s.top_homology_vanishes) : Json(nullptr)},
              {"top_homology_report", s.mu_report ? to_json(*s.mu_report) : Json(nullptr)}};
}

Json to_json(const GlobalHomologyReport& r) {
  return Json{{"homology", to_json(r.homology)},
              {"cartan", r.cartan ? to_json(*r.cartan) : Json(nullptr)},
              {"homotopy", r.homotopy ? to_json(*r.homotopy) : Json(nullptr)}};
}

Json to_json(const DimensionResult& r) {
  Json trace = Json::array();
  for (const auto& t : r.trace) trace.push_back(Json{{"sign", t.sign}, {"value", t.value}, {"term", t.label}});
  return Json{{"value", r.value}, {"trace", trace}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string render(const HomologyReport& r) {
  std::ostringstream s;
  s << "Kos_" << r.n << ": " << range_line(r.degree_min, r.degree_bound, r.complete) << "\n";
  const int cols = r.top + 1;
  s << std::setw(5) << "d" << " |";
  for (int p = 0; p < cols; ++p) s << std::setw(7) << ("T_" + std::to_string(p));
  s << " |";
  for (int p = 0; p < cols; ++p) s << std::setw(6) << ("H_" + std::to_string(p));
  s << " |" << std::setw(7) << "chi" << "\n";
  for (const HomologyRow& row : r.rows) {
    s << std::setw(5) << row.degree << " |";
    for (Index v : row.term_dims) s << std::setw(7) << v;
    s << " |";
    for (Index v : row.homology) s << std::setw(6) << v;
    s << " |" << std::setw(7) << row.euler << "\n";
  }
  s << "higher homology vanishes: " << yes_no(r.higher_vanishes()) << "; onto the last term: "
    << yes_no(r.cokernel_vanishes()) << "; acyclic within range: " << yes_no(r.acyclic()) << "\n";
  return s.str();
}

std::string render(const CartanReport& r) {
  std::ostringstream s;
  s << "Cartan n=" << r.n << " (n = " << r.scalar << " in the field), internal degrees " << r.degree_min << ".." << r.degree_bound << ": " << (r.holds() ? "holds" : "VIOLATED") << " on " << r.slices_checked << " slices\n";
  if (!r.squares_vanish) s << "  a differential does not square to zero\n";
  if (r.violation) s << "  p=" << r.violation->p << " d=" << r.violation->degree << ": " << r.violation->detail << "\n";
  return s.str();
}

std::string render(const HomotopyReport& r) {
  std::ostringstream s;
  s << "Homotopy h = d/" << r.n << ": " << (r.holds() ? "contracts" : "FAILS") << " on " << r.slices_checked
    << " slices\n";
  if (r.violation) s << "  p=" << r.violation->p << " d=" << r.violation->degree << ": " << r.violation->detail << "\n";
  if (!r.consistent_with_homology) s << "  contraction holds but homology is nonzero\n";
  s << render(r.homology);
  return s.str();
}

std::string render(const ScanSummary& sc) {
  std::ostringstream s;
  for (const auto& r : sc.reports)
    s << "n=" << r.n << ": acyclic within degree <= " << r.degree_bound << ": " << yes_no(r.acyclic())
      << (r.complete ? "" : " (truncated)") << "\n";
  s << "largest non-acyclic n: " << (sc.largest_non_acyclic ? std::to_string(*sc.largest_non_acyclic) : "none") << "\n";
  for (const auto& w : sc.nonzero_homology)
    s << "  H_" << w.p << "(Kos_" << w.n << ")_" << w.degree << " = " << w.dim << "\n";
  s << "minimal generators: " << sc.mu.count << (sc.mu.possible_undercount ? " (possible undercount)" : "") << "\n";
  if (sc.top_homology_vanishes)
    s << "H_mu(Kos_mu) = 0: " << yes_no(*sc.top_homology_vanishes) << "\n";
  else
    s << "H_mu(Kos_mu) = 0: not applicable (mu = 0)\n";
  return s.str();
}

std::string render(const DimensionResult& r) {
  std::ostringstream s;
  for (const auto& t : r.trace) s << "  " << (t.sign > 0 ? "+ " : "- ") << std::setw(8) << t.value << "  " << t.label << "\n";
  s << "= " << r.value << "\n";
  return s.str();
}

}  // namespace koszul
