#include "boomspec/spectra.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boomspec {

bool is_permutation_exponent(int k, std::uint64_t d) {
  std::uint64_t a = d, b = (1ull << k) - 1;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a == 1;
}

PermTable build_power_perm(std::shared_ptr<const FieldSpec> spec, std::uint64_t d) {
  if (!spec || !spec->has_tables())
    throw std::invalid_argument("build_power_perm: need a table-built field");
  if (!is_permutation_exponent(spec->k, d))
    throw std::domain_error("exponent is not a permutation exponent (gcd(d,2^k-1) != 1)");
  PermTable P;
  P.spec = std::move(spec);
  P.exponent = d;
  const std::uint32_t Q = P.spec->Q();
  const std::uint32_t N = Q - 1;
  const std::uint64_t dr = d % N;
  P.forward.assign(Q, 0);
  P.inverse.assign(Q, 0);
  for (std::uint32_t x = 1; x < Q; ++x)
    P.forward[x] = P.spec->exp[static_cast<std::uint32_t>(
        dr * static_cast<std::uint64_t>(P.spec->log[x]) % N)];
  for (std::uint32_t x = 0; x < Q; ++x) P.inverse[P.forward[x]] = x;
  return P;
}

PermTable load_perm_table(std::shared_ptr<const FieldSpec> spec, std::istream& in) {
  if (!spec) throw std::invalid_argument("load_perm_table: null field");
  const std::uint32_t Q = spec->Q();
  PermTable P;
  P.spec = std::move(spec);
  P.forward.assign(Q, 0);
  std::vector<bool> seen_x(Q, false), seen_y(Q, false);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string xs, ys;
    if (!(ls >> xs)) continue;
    if (!(ls >> ys))
      throw std::invalid_argument("perm table line " + std::to_string(lineno) +
                                  ": expected `x f(x)`");
    std::uint64_t x, y;
    try {
      x = std::stoull(xs, nullptr, 16);
      y = std::stoull(ys, nullptr, 16);
    } catch (const std::exception&) {
      throw std::invalid_argument("perm table line " + std::to_string(lineno) +
                                  ": bad hex value");
    }
    if (x >= Q || y >= Q)
      throw std::invalid_argument("perm table line " + std::to_string(lineno) +
                                  ": value exceeds field size");
    if (seen_x[x])
      throw std::invalid_argument("perm table: duplicate input " + xs);
    if (seen_y[y])
      throw std::invalid_argument("perm table: duplicate output " + ys +
                                  " (not a bijection)");
    seen_x[x] = seen_y[y] = true;
    P.forward[x] = static_cast<Elt>(y);
  }
  for (std::uint32_t x = 0; x < Q; ++x)
    if (!seen_x[x])
      throw std::invalid_argument("perm table: missing entry for input " +
                                  std::to_string(x));
  P.inverse.assign(Q, 0);
  for (std::uint32_t x = 0; x < Q; ++x) P.inverse[P.forward[x]] = x;
  return P;
}

void save_perm_table(const PermTable& P, std::ostream& out) {
  char buf[32];
  for (std::uint32_t x = 0; x < P.Q(); ++x) {
    std::snprintf(buf, sizeof buf, "%x %x\n", x, P.forward[x]);
    out << buf;
  }
}

long long diff_count(const PermTable& P, Elt a, Elt b) {
  if (a == 0) throw std::domain_error("diff_count: a must be nonzero");
  long long n = 0;
  for (std::uint32_t x = 0; x < P.Q(); ++x)
    if ((P.forward[x] ^ P.forward[x ^ a]) == b) ++n;
  return n;
}

std::vector<long long> diff_row(const PermTable& P, Elt a) {
  if (a == 0) throw std::domain_error("diff_row: a must be nonzero");
  std::vector<long long> row(P.Q(), 0);
  for (std::uint32_t x = 0; x < P.Q(); ++x) ++row[P.forward[x] ^ P.forward[x ^ a]];
  return row;
}

SpectrumMultiset diff_spectrum(const PermTable& P, Elt a) {
  SpectrumMultiset s;
  for (long long v : diff_row(P, a)) {
    ++s.counts[v];
    ++s.total;
  }
  return s;
}

long long differential_uniformity(const PermTable& P) {
  long long best = 0;
  for (std::uint32_t a = 1; a < P.Q(); ++a) {
    auto row = diff_row(P, a);
    for (std::uint32_t b = 1; b < P.Q(); ++b) best = std::max(best, row[b]);
  }
  return best;
}

long long bct_entry(const PermTable& P, Elt a, Elt b) {
  if (a == 0) throw std::domain_error("bct_entry: a must be nonzero");
  const Elt* fwd = P.forward.data();
  const Elt* inv = P.inverse.data();
  long long n = 0;
  for (std::uint32_t x = 0; x < P.Q(); ++x)
    if ((inv[fwd[x] ^ b] ^ inv[fwd[x ^ a] ^ b]) == a) ++n;
  return n;
}

// Sorted F-images bucketed by the derivative value F(x)+F(x+a).
static std::vector<std::vector<Elt>> buckets_for(const PermTable& P, Elt a) {
  std::vector<std::vector<Elt>> buckets(P.Q());
  for (std::uint32_t x = 0; x < P.Q(); ++x)
    buckets[P.forward[x] ^ P.forward[x ^ a]].push_back(P.forward[x]);
  for (auto& v : buckets) std::sort(v.begin(), v.end());
  return buckets;
}

std::vector<std::vector<Elt>> derivative_buckets(const PermTable& P) {
  return buckets_for(P, 1);
}

// Ordered pairs within one bucket whose images differ by b. Images inside a
// bucket are pairwise distinct (F is a permutation), so binary search counts
// each partner at most once.
static long long bucket_pairs(const std::vector<Elt>& imgs, Elt b) {
  long long n = 0;
  for (Elt v : imgs)
    if (std::binary_search(imgs.begin(), imgs.end(), v ^ b)) ++n;
  return n;
}

long long bct_entry_system(const PermTable& P, Elt a, Elt b) {
  if (a == 0) throw std::domain_error("bct_entry_system: a must be nonzero");
  auto buckets = buckets_for(P, a);
  long long n = 0;
  for (const auto& imgs : buckets) n += bucket_pairs(imgs, b);
  return n;
}

long long beta_tilde(const PermTable& P, Elt b, Elt c) {
  std::vector<Elt> imgs;
  for (std::uint32_t x = 0; x < P.Q(); ++x)
    if ((P.forward[x] ^ P.forward[x ^ 1]) == c) imgs.push_back(P.forward[x]);
  std::sort(imgs.begin(), imgs.end());
  return bucket_pairs(imgs, b);
}

long long mu_sum_beta_tilde(const PermTable& P, Elt b) {
  const FieldSpec& spec = *P.spec;
  if (spec.k % 4 != 0)
    throw std::domain_error("mu_sum_beta_tilde: field degree must be 4n");
  const std::uint32_t q = 1u << (spec.k / 4);
  auto buckets = derivative_buckets(P);
  const std::uint32_t N = spec.order();
  const std::uint32_t step = N / (q + 1);
  long long sum = 0;
  for (std::uint32_t i = 1; i <= q; ++i)  // mu_{q+1} minus the identity
    sum += bucket_pairs(buckets[spec.exp[i * step % N]], b);
  return sum;
}

std::vector<long long> boomerang_row_serial(const PermTable& P, Elt a) {
  if (a == 0) throw std::domain_error("boomerang_row: a must be nonzero");
  std::vector<long long> row(P.Q());
  for (std::uint32_t b = 0; b < P.Q(); ++b) row[b] = bct_entry(P, a, b);
  return row;
}

std::vector<long long> boomerang_row(const PermTable& P, Elt a, int workers) {
  if (a == 0) throw std::domain_error("boomerang_row: a must be nonzero");
  const std::int64_t Q = P.Q();
  std::vector<long long> row(Q);
#ifdef _OPENMP
  if (workers > 0) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t b = 0; b < Q; ++b)
      row[b] = bct_entry(P, a, static_cast<Elt>(b));
    return row;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < Q; ++b) row[b] = bct_entry(P, a, static_cast<Elt>(b));
#else
  (void)workers;
  for (std::int64_t b = 0; b < Q; ++b) row[b] = bct_entry(P, a, static_cast<Elt>(b));
#endif
  return row;
}

long long boomerang_uniformity(const PermTable& P, int workers) {
  const std::uint32_t Q = P.Q();
  if (P.exponent) {
    // power map: beta(a,b) = beta(1, b/F(a)), so one row carries the max
    auto row = boomerang_row(P, 1, workers);
    long long best = 0;
    for (std::uint32_t b = 1; b < Q; ++b) best = std::max(best, row[b]);
    return best;
  }
  if (P.spec->k > 12)
    throw std::length_error(
        "boomerang_uniformity: full (a,b) sweep capped at k <= 12 for "
        "general tables; power maps use the single-row fast path");
  long long best = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : best) \
    num_threads(workers > 0 ? workers : omp_get_max_threads())
#endif
  for (std::int64_t a = 1; a < static_cast<std::int64_t>(Q); ++a) {
    const Elt* fwd = P.forward.data();
    const Elt* inv = P.inverse.data();
    for (std::uint32_t b = 1; b < Q; ++b) {
      long long n = 0;
      for (std::uint32_t x = 0; x < Q; ++x)
        if ((inv[fwd[x] ^ b] ^ inv[fwd[x ^ a] ^ b]) == a) ++n;
      best = std::max(best, n);
    }
  }
  return best;
}

SpectrumMultiset boomerang_spectrum(const PermTable& P, Elt a, int workers) {
  auto row = boomerang_row(P, a, workers);
  SpectrumMultiset s;
  for (std::uint32_t b = 1; b < P.Q(); ++b) {
    ++s.counts[row[b]];
    ++s.total;
  }
  return s;
}

}  // namespace boomspec
