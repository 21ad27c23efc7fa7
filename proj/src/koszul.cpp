#include "koszul/koszul.hpp"

namespace koszul {

KoszulTermLayout koszul_term(const ModuleSpec& m, int p, int n) {
  KoszulTermLayout out;
  if (p < 0 || p > n) {
    out.module = ModuleSpec{m.algebra, {}, {}};
    return out;
  }
  const int rank = static_cast<int>(m.rank());
  out.wedges = increasing_tuples(rank, p);
  out.syms = multisets(rank, n - p);
  out.module = tensor(ext_power(m, p), sym_power(m, n - p));
  return out;
}

DegreeWindow degree_window(const std::vector<Bidegree>& generator_degrees, int n, std::pair<int, int> y_weights,
                           std::optional<int> vanishing, int degree_bound) {
  DegreeWindow w;
  bool any = false;
  int lowest = 0, highest = 0;
  for (const Bidegree& g : generator_degrees) {
    const int rest = n - g.sym;
    if (rest < 0) continue;
    const int lo = g.weight + rest * y_weights.first;
    const int hi = g.weight + rest * y_weights.second;
    lowest = any ? std::min(lowest, lo) : lo;
    highest = any ? std::max(highest, hi) : hi;
    any = true;
  }
  if (!any) {
    w.complete = true;
    return w;
  }
  w.lowest = lowest;
  w.complete = vanishing.has_value() && highest + *vanishing - 1 <= degree_bound;
  return w;
}

bool HomologyReport::higher_vanishes() const {
  for (const HomologyRow& row : rows)
    for (std::size_t p = 1; p < row.homology.size(); ++p)
      if (row.homology[p] != 0) return false;
  return true;
}

bool HomologyReport::cokernel_vanishes() const {
  for (const HomologyRow& row : rows)
    if (!row.homology.empty() && row.homology[0] != 0) return false;
  return true;
}

}  // namespace koszul
