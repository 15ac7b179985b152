#pragma once
// Exhaustive differential/boomerang machinery for permutations of GF(2^k),
// given as power maps or lookup tables. Hot sweeps (boomerang_row, the
// all-(a,b) uniformity search, bct cross-checks) run on OpenMP with results
// written into position-indexed arrays, so output is deterministic for any
// worker count. Serial reference implementations are kept alongside and
// cross-tested.

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "boomspec/field.hpp"

namespace boomspec {

struct PermTable {
  std::shared_ptr<const FieldSpec> spec;
  std::vector<Elt> forward;
  std::vector<Elt> inverse;
  std::optional<std::uint64_t> exponent;  // set when F(x) = x^d

  std::uint32_t Q() const { return spec->Q(); }
};

struct SpectrumMultiset {
  std::map<long long, long long> counts;  // value -> multiplicity
  long long total = 0;                    // number of b aggregated
};

bool is_permutation_exponent(int k, std::uint64_t d);
// forward[x] = x^d (F(0)=0); throws std::domain_error when gcd(d,2^k-1)!=1.
PermTable build_power_perm(std::shared_ptr<const FieldSpec> spec, std::uint64_t d);
// One `x f(x)` pair per line, hexadecimal; bijectivity validated on load.
PermTable load_perm_table(std::shared_ptr<const FieldSpec> spec, std::istream& in);
void save_perm_table(const PermTable& P, std::ostream& out);

// #\{x : F(x+a)+F(x) = b\}; a != 0 required. Always even.
long long diff_count(const PermTable& P, Elt a, Elt b);
// All Q differential counts for fixed a, one histogram pass.
std::vector<long long> diff_row(const PermTable& P, Elt a);
SpectrumMultiset diff_spectrum(const PermTable& P, Elt a = 1);
long long differential_uniformity(const PermTable& P);

// #\{x : F^{-1}(F(x)+b) + F^{-1}(F(x+a)+b) = a\}; bct_entry(P,a,0) = Q.
long long bct_entry(const PermTable& P, Elt a, Elt b);
// Same value counted as solution pairs (x,y) of the two-equation system
// F(x)+F(x+a) = F(y)+F(y+a), F(x)+F(y) = b, via derivative bucketing.
// Independent oracle for bct_entry.
long long bct_entry_system(const PermTable& P, Elt a, Elt b);

// Ordered pairs (x,y) with F(x)+F(y) = b and F(x)+F(x+1) = F(y)+F(y+1) = c.
long long beta_tilde(const PermTable& P, Elt b, Elt c);
// Sum of beta_tilde(P,b,c) over the q nontrivial (q+1)-th roots of unity;
// requires field degree 4n.
long long mu_sum_beta_tilde(const PermTable& P, Elt b);

// beta(a,b) for every b (index = b). workers = 0 means library default.
std::vector<long long> boomerang_row(const PermTable& P, Elt a = 1, int workers = 0);
std::vector<long long> boomerang_row_serial(const PermTable& P, Elt a = 1);
// Max over b != 0 (power maps: single row; general tables: all a != 0,
// capped at k <= 12 — larger general sweeps throw std::length_error).
long long boomerang_uniformity(const PermTable& P, int workers = 0);
SpectrumMultiset boomerang_spectrum(const PermTable& P, Elt a = 1, int workers = 0);

// Derivative buckets for a = 1: bucket_of_c = sorted F-images of
// \{x : F(x)+F(x+1) = c\}. Shared by beta_tilde-style sweeps.
std::vector<std::vector<Elt>> derivative_buckets(const PermTable& P);

}  // namespace boomspec
