#include "koszul/bott.hpp"

namespace koszul {

long long binom(long long a, long long b) {
  if (a < 0 || b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  __int128 result = 1;
  for (long long i = 0; i < b; ++i) {
    result = result * (a - i) / (i + 1);
    if (result > std::numeric_limits<long long>::max())
      throw ValidationError("binomial coefficient C(" + std::to_string(a) + "," + std::to_string(b) +
                            ") does not fit in 64 bits");
  }
  return static_cast<long long>(result);
}

namespace {

long long checked_mul(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw ValidationError("dimension does not fit in 64 bits");
  return out;
}

void require_positive(int n, const char* what) {
  if (n <= 0) throw PreconditionError(std::string(what) + " needs n > 0 (got " + std::to_string(n) + ")");
}

DimensionResult finish(std::vector<SignedTerm> trace, const std::string& what) {
  DimensionResult out;
  for (const SignedTerm& t : trace) out.value += t.sign * t.value;
  out.trace = std::move(trace);
  if (out.value < 0)
    throw ValidationError(what + " is negative (" + std::to_string(out.value) + "): the input table is inconsistent");
  return out;
}

std::string entry_label(int q, int j, const char* sheaf) {
  return "h^" + std::to_string(q) + "(" + sheaf + std::to_string(j) + ")";
}

void require_char_zero(const BundleCohomologyTable& t) {
  if (!t.characteristic_zero) throw PreconditionError("bundle calculators assume characteristic zero");
}

}  // namespace

long long bott_h0(int r, int p, int n) {
  require_positive(n, "bott_h0");
  return checked_mul(binom(n + r - p, n), binom(n - 1, p));
}

long long bott_hr(int r, int p, int n) {
  require_positive(n, "bott_hr");
  return checked_mul(binom(n + p, n), binom(n - 1, r - p));
}

long long bott_h_diag(int r, int p) { return 0 <= p && p <= r ? 1 : 0; }

DimensionResult verdier_sum(int r, int p, int n) {
  require_positive(n, "verdier_sum");
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= p; ++i) {
    const long long v = checked_mul(binom(r + 1, p - i), binom(n + r - p + i, r));
    trace.push_back({i % 2 == 0 ? 1 : -1, v,
                     "C(" + std::to_string(r + 1) + "," + std::to_string(p - i) + ")·C(" +
                         std::to_string(n + r - p + i) + "," + std::to_string(r) + ")"});
  }
  try {
    return finish(std::move(trace), "alternating sum");
  } catch (const ValidationError& e) {
    throw InternalError(e.what());
  }
}

bool binomial_identity_check(int r, int p, int n) {
  require_positive(n, "binomial_identity_check");
  const long long lhs = checked_mul(binom(n + r - p, n), binom(n - 1, p)) +
                        checked_mul(binom(n + r - p + 1, n), binom(n - 1, p - 1));
  return lhs == checked_mul(binom(r + 1, p), binom(n - p + r, r));
}

bool splitting_dim_check(int r, int p, int n) {
  const long long k = k_dim_engine(r, p, n) + (p > 0 ? k_dim_engine(r, p - 1, n) : 0);
  return k == checked_mul(binom(r + 1, p), binom(n - p + r, r));
}

long long BundleCohomologyTable::at(int q, int j, int max_j) const {
  if (q < 0 || j < 0 || j > max_j) return 0;
  const auto it = h.find({q, j});
  if (it == h.end())
    throw ValidationError("cohomology table has no entry for q=" + std::to_string(q) + ", j=" + std::to_string(j));
  if (it->second < 0) throw ValidationError("cohomology table entry is negative");
  return it->second;
}

BundleCohomologyTable point_table(int r, int n) {
  BundleCohomologyTable t;
  t.r = r;
  t.n = n;
  t.note = "X = point";
  for (int j = 0; j <= r + 1; ++j) t.h[{0, j}] = checked_mul(binom(r + 1, j), binom(n - j + r, r));
  for (int q = 1; q <= r; ++q)
    for (int j = 0; j <= r + 1; ++j) t.h[{q, j}] = 0;
  t.smooth_dimension = 0;
  return t;
}

DimensionResult relative_bundle_cohomology(const BundleCohomologyTable& table, int q, int p) {
  require_char_zero(table);
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= p; ++i)
    trace.push_back({i % 2 == 0 ? 1 : -1, table.at(q, p - i, table.r + 1), entry_label(q, p - i, "Λ^j E⊗S^{n-j}E, j=")});
  return finish(std::move(trace), "relative bundle cohomology");
}

DimensionResult relative_bundle_cohomology_negative(const BundleCohomologyTable& dual_table, int q, int p) {
  require_char_zero(dual_table);
  const int r = dual_table.r;
  const int pbar = r + 1 - p;
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= p; ++i)
    trace.push_back({i % 2 == 0 ? 1 : -1, dual_table.at(q - r, pbar + i, r + 1),
                     entry_label(q - r, pbar + i, "Λ^j E*⊗S^{n-j}E*, j=")});
  return finish(std::move(trace), "relative bundle cohomology");
}

long long relative_untwisted(const std::vector<long long>& structure, int q, int p) {
  const int i = q - p;
  if (i < 0 || i >= static_cast<int>(structure.size())) return 0;
  return structure[static_cast<std::size_t>(i)];
}

DimensionResult absolute_bundle_cohomology(const BundleCohomologyTable& table, int q, int p) {
  require_char_zero(table);
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= p; ++i)
    trace.push_back({i % 2 == 0 ? 1 : -1, table.at(q, p - i, std::numeric_limits<int>::max()),
                     entry_label(q, p - i, "[Ω^j_B]_n, j=")});
  return finish(std::move(trace), "absolute bundle cohomology");
}

DimensionResult absolute_bundle_cohomology_negative(const BundleCohomologyTable& table, int q, int p) {
  require_char_zero(table);
  if (!table.smooth_dimension)
    throw PreconditionError("the negative-twist formula needs a smooth base of declared dimension");
  const int d = *table.smooth_dimension;
  const int r = table.r;
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= d + r - p; ++i)
    trace.push_back({i % 2 == 0 ? 1 : -1, table.at(d + r - q, d + r - p - i, std::numeric_limits<int>::max()),
                     entry_label(d + r - q, d + r - p - i, "[Ω^j_B]_n, j=")});
  return finish(std::move(trace), "absolute bundle cohomology");
}

DimensionResult absolute_rr_split_sum(const std::map<std::pair<int, int>, long long>& mixed, int r, int p,
                                      bool assume_locally_trivial) {
  if (!assume_locally_trivial)
    throw PreconditionError("outside the smooth case the direct-sum formula needs a declared local triviality");
  std::vector<SignedTerm> trace;
  for (int j = 0; j <= p; ++j) {
    const auto it = mixed.find({p - j, r + 1 - j});
    if (it == mixed.end())
      throw ValidationError("mixed table has no entry for (" + std::to_string(p - j) + ", " +
                            std::to_string(r + 1 - j) + ")");
    trace.push_back({1, it->second,
                     "h(Ω^" + std::to_string(p - j) + "_X⊗Λ^" + std::to_string(r + 1 - j) + "E*⊗S E*)"});
  }
  return finish(std::move(trace), "split sum");
}

DimensionResult hodge_sum(const std::map<std::pair<int, int>, long long>& hodge, int r, int q, int p) {
  std::vector<SignedTerm> trace;
  for (int i = 0; i <= r; ++i) {
    if (q - i < 0 || p - i < 0) continue;
    const auto it = hodge.find({q - i, p - i});
    trace.push_back({1, it == hodge.end() ? 0 : it->second,
                     "h^" + std::to_string(q - i) + "(Ω^" + std::to_string(p - i) + "_X)"});
  }
  return finish(std::move(trace), "Hodge sum");
}

}  // namespace koszul
