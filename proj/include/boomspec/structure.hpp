#pragma once
// Multiplicative-subgroup machinery over GF(2^k): mu_m enumeration and
// membership, the mu_{q-1} * mu_{q+1} * mu_{q^2+1} factorization of
// GF(q^4)* for k = 4n, subfield embeddings, and the two-solution
// decomposition z = c + 1/c. Everything is immutable after construction.

#include <cstdint>
#include <vector>

#include "boomspec/field.hpp"

namespace boomspec {

struct MuGroup {
  int m = 0;
  std::vector<Elt> elements;  // sorted, exactly m entries
};

// All m solutions of x^m = 1; requires m | 2^k-1 (tables required).
MuGroup mu_enumerate(const FieldSpec& spec, std::uint32_t m);
// True iff x != 0 and x^m = 1. x = 0 returns false (0 is in no mu_m).
bool mu_member(const FieldSpec& spec, std::uint32_t m, Elt x);

struct UnitFactorization {
  Elt a = 0;  // in mu_{q-1}
  Elt u = 0;  // in mu_{q+1}
  Elt t = 0;  // in mu_{q^2+1}
};

// Unique (a,u,t) with a*u*t = x; requires k = 4n and x != 0.
UnitFactorization unit_factorize(const FieldSpec& spec, Elt x);

// Embedding of GF(2^m) into a field of degree divisible by m, realized by
// the smallest root theta of the small field's modulus in the big field.
struct SubfieldEmbedding {
  Elt theta = 0;
  std::vector<Elt> theta_pow;  // theta^0 .. theta^(m-1) in the big field
};

SubfieldEmbedding make_embedding(const FieldSpec& small, const FieldSpec& big);
Elt embed(const FieldSpec& big, const SubfieldEmbedding& e, Elt x);

enum class ChiBranch { SUBFIELD_PAIR, UNIT_CIRCLE_PAIR };

struct ChiDecomposition {
  Elt c1 = 0;  // the two ambient-field solutions of c^2 + z c + 1 = 0
  Elt c2 = 0;
  ChiBranch branch = ChiBranch::SUBFIELD_PAIR;
};

// Context for decomposing z = c + 1/c over GF(2^m): the ambient field
// GF(2^{2m}), the embedding, and an Artin-Schreier preimage table for
// u^2 + u = t. Build once, then query any z.
struct ChiContext {
  FieldSpec small;
  FieldSpec ambient;
  SubfieldEmbedding emb;
  std::vector<Elt> artin_pre;  // one preimage per attained t, ~0u elsewhere
};

ChiContext make_chi_context(int m, std::uint32_t small_modulus = 0);

// Every z in GF(2^m)* is c + 1/c for exactly two c; both land in the
// embedded GF(2^m)* when trace(1,1/z) = 0 and in mu_{2^m+1}\{1} when
// trace(1,1/z) = 1. Throws std::domain_error on z = 0.
ChiDecomposition chi_decompose(const ChiContext& ctx, Elt z);

}  // namespace boomspec
