#include "boomspec/closedform.hpp"

#include <stdexcept>

namespace boomspec {

const char* region_name(BRegion r) {
  switch (r) {
    case BRegion::ZERO: return "ZERO";
    case BRegion::ONE: return "ONE";
    case BRegion::SUBFIELD_Q: return "SUBFIELD_Q";
    case BRegion::MU_STAR: return "MU_STAR";
    case BRegion::Q2_OTHER: return "Q2_OTHER";
    case BRegion::S2: return "S2";
    case BRegion::S2_PRIME: return "S2_PRIME";
    case BRegion::TRACE_ZERO_OUTSIDE: return "TRACE_ZERO_OUTSIDE";
  }
  return "?";
}

static void require_4n(const FieldSpec& spec, int n) {
  if (n < 1 || spec.k != 4 * n)
    throw std::domain_error("field degree must equal 4n");
}

S2Witness s2_membership(const FieldSpec& spec, int n, Elt b) {
  require_4n(spec, n);
  S2Witness w;
  const Elt T = trace(spec, n, b);
  if (T == 0) return w;  // NEITHER
  const std::uint64_t q = 1ull << n;
  // Tr != 0 keeps both denominators nonzero: b outside GF(q^2) gives
  // s = b + b^{q^2} != 0, and b^{q+1} = 1 would put b inside GF(q^2).
  const Elt s = b ^ gf_pow(spec, b, q * q);
  const Elt wv = gf_pow(spec, b, q + 1) ^ 1u;
  w.A = gf_div(spec, norm(spec, n, wv), gf_pow(spec, gf_mul(spec, s, T), 2));
  w.U = gf_div(spec, gf_pow(spec, wv, q * q + 1), gf_pow(spec, s, q + 1));
  w.trA = partial_trace(spec, n, w.A);
  const Elt delta = w.trA ^ w.U;
  if (delta > 1)
    throw std::logic_error("s2_membership: witness dichotomy violated");
  w.verdict = delta == 0 ? S2Verdict::S2 : S2Verdict::S2_PRIME;
  return w;
}

BRegion region_of(const FieldSpec& spec, int n, Elt b) {
  require_4n(spec, n);
  if (b == 0) return BRegion::ZERO;
  if (b == 1) return BRegion::ONE;
  const std::uint64_t q = 1ull << n;
  if (gf_pow(spec, b, q + 1) == 1) return BRegion::MU_STAR;
  if (in_subfield(spec, n, b)) return BRegion::SUBFIELD_Q;
  if (in_subfield(spec, 2 * n, b)) return BRegion::Q2_OTHER;
  switch (s2_membership(spec, n, b).verdict) {
    case S2Verdict::S2: return BRegion::S2;
    case S2Verdict::S2_PRIME: return BRegion::S2_PRIME;
    case S2Verdict::NEITHER: break;
  }
  return BRegion::TRACE_ZERO_OUTSIDE;
}

long long predicted_beta(int n, BRegion r) {
  const long long q = 1ll << n;
  switch (r) {
    case BRegion::ZERO: return q * q * q * q;
    case BRegion::ONE: return q * q;
    case BRegion::SUBFIELD_Q: return 2 * q * q;
    case BRegion::MU_STAR: return 3 * q * (q - 1);
    case BRegion::Q2_OTHER: return 2 * q * q - 3 * q;
    case BRegion::S2: return 2;
    case BRegion::S2_PRIME: return 0;
    case BRegion::TRACE_ZERO_OUTSIDE: return q * q - 2 * q;
  }
  return -1;
}

long long predicted_diff_count(int n, BRegion r) {
  const long long q = 1ll << n;
  switch (r) {
    case BRegion::ONE: return q * q;
    case BRegion::MU_STAR: return q * q - q;
    case BRegion::S2: return 2;
    default: return 0;
  }
}

long long predicted_mu_sum(int n, BRegion r) {
  const long long q = 1ll << n;
  switch (r) {
    case BRegion::ZERO: return (q - 1) * q * q;
    case BRegion::ONE: return 0;
    case BRegion::SUBFIELD_Q: return q * q;
    case BRegion::MU_STAR: return 2 * q * q - 3 * q;
    case BRegion::Q2_OTHER: return q * q - 3 * q;
    case BRegion::S2: return 0;
    case BRegion::S2_PRIME: return 0;
    case BRegion::TRACE_ZERO_OUTSIDE: return q * q - 2 * q;
  }
  return -1;
}

long long predicted_s2_sum(int n, BRegion r) {
  const long long q = 1ll << n;
  switch (r) {
    case BRegion::ZERO: return q * q * q * q - q * q * q;
    case BRegion::S2: return 2;
    default: return 0;
  }
}

long long predicted_c1_term(int n, BRegion r) {
  const long long q = 1ll << n;
  switch (r) {
    case BRegion::ZERO:
    case BRegion::ONE:
    case BRegion::SUBFIELD_Q:
    case BRegion::MU_STAR:
    case BRegion::Q2_OTHER:
      return q * q;  // exactly the b in GF(q^2)
    default:
      return 0;
  }
}

#define BOOMSPEC_BY_B(NAME)                                            \
  long long NAME(const FieldSpec& spec, int n, Elt b) {                \
    return NAME(n, region_of(spec, n, b));                             \
  }
BOOMSPEC_BY_B(predicted_beta)
BOOMSPEC_BY_B(predicted_diff_count)
BOOMSPEC_BY_B(predicted_mu_sum)
BOOMSPEC_BY_B(predicted_s2_sum)
BOOMSPEC_BY_B(predicted_c1_term)
#undef BOOMSPEC_BY_B

std::map<BRegion, long long> region_cardinalities(int n) {
  const long long q = 1ll << n;
  return {
      {BRegion::ZERO, 1},
      {BRegion::ONE, 1},
      {BRegion::SUBFIELD_Q, q - 2},
      {BRegion::MU_STAR, q},
      {BRegion::Q2_OTHER, q * q - 2 * q},
      {BRegion::S2, (q * q * q * q - q * q * q) / 2},
      {BRegion::S2_PRIME, (q * q * q * q - q * q * q) / 2},
      {BRegion::TRACE_ZERO_OUTSIDE, q * q * q - q * q},
  };
}

long long closed_boomerang_uniformity(int n) {
  const long long q = 1ll << n;
  return 3 * q * (q - 1);
}

std::uint64_t main_exponent(int n) {
  const std::uint64_t q = 1ull << n;
  return q * q * q + q * q + q - 1;
}

}  // namespace boomspec
