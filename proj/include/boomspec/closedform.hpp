#pragma once
// Closed-form predictions for the power permutation X^(q^3+q^2+q-1) over
// GF(q^4), q = 2^n: the eight-region classifier of b-space, the S2/S2'
// trace witness, predicted boomerang and differential counts, predicted
// partial sums of beta_tilde, and closed-form region cardinalities.

#include <cstdint>
#include <map>

#include "boomspec/field.hpp"

namespace boomspec {

enum class BRegion {
  ZERO,                 // b = 0
  ONE,                  // b = 1
  SUBFIELD_Q,           // b in GF(q) \ GF(2)
  MU_STAR,              // b in mu_{q+1} \ {1}
  Q2_OTHER,             // b in GF(q^2) \ (GF(q) u mu_{q+1})
  S2,                   // trace-nonzero b with the witness equality
  S2_PRIME,             // trace-nonzero b without it
  TRACE_ZERO_OUTSIDE,   // Tr_n^{4n}(b) = 0, b outside GF(q^2), b != 0
};

constexpr int kNumRegions = 8;
const char* region_name(BRegion r);

enum class S2Verdict { S2, S2_PRIME, NEITHER };

// Witness for the trace test splitting \{Tr_n^{4n}(b) != 0\}:
//   A   = Nr_n^{4n}(b^{q+1}+1) / [(b+b^{q^2}) Tr_n^{4n}(b)]^2
//   U   = (b^{q+1}+1)^{q^2+1} / (b+b^{q^2})^{q+1}
//   trA = partial_trace(n, A)
// trA and U are both roots of y^2 + y = A + A^q (same Artin-Schreier
// quadratic), so trA ^ U is always 0 or 1; membership is trA = U.
struct S2Witness {
  Elt A = 0;
  Elt trA = 0;
  Elt U = 0;
  S2Verdict verdict = S2Verdict::NEITHER;
};

// Requires spec.k = 4n. NEITHER iff trace(n,4n,b) = 0. Throws
// std::logic_error if trA ^ U falls outside {0,1} (must never fire).
S2Witness s2_membership(const FieldSpec& spec, int n, Elt b);

// Region tests evaluated in the fixed order ZERO, ONE, MU_STAR,
// SUBFIELD_Q, Q2_OTHER, then the S2 witness, else TRACE_ZERO_OUTSIDE.
BRegion region_of(const FieldSpec& spec, int n, Elt b);

// Predicted beta(1,b) by region; ZERO returns q^4 (the full-row value,
// reported but excluded from uniformity maxima).
long long predicted_beta(int n, BRegion r);
long long predicted_beta(const FieldSpec& spec, int n, Elt b);
// Predicted differential count N(b) = #\{x : F(x)+F(x+1) = b\}.
long long predicted_diff_count(int n, BRegion r);
long long predicted_diff_count(const FieldSpec& spec, int n, Elt b);
// Predicted sum of beta_tilde(1,b,c) over c in mu_{q+1} \ {1}.
long long predicted_mu_sum(int n, BRegion r);
long long predicted_mu_sum(const FieldSpec& spec, int n, Elt b);
// Predicted sum of beta_tilde(1,b,c) over c in S2.
long long predicted_s2_sum(int n, BRegion r);
long long predicted_s2_sum(const FieldSpec& spec, int n, Elt b);
// Predicted beta_tilde(1,b,1) term: q^2 on GF(q^2), else 0.
long long predicted_c1_term(int n, BRegion r);
long long predicted_c1_term(const FieldSpec& spec, int n, Elt b);

std::map<BRegion, long long> region_cardinalities(int n);
// 3q(q-1), the predicted max over b != 0.
long long closed_boomerang_uniformity(int n);
// q^3 + q^2 + q - 1.
std::uint64_t main_exponent(int n);

}  // namespace boomspec
