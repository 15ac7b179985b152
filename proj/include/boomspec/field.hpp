#pragma once
// GF(2^k) arithmetic for 2 <= k <= 24: polynomial basis with optional
// exp/log tables. A FieldSpec is immutable once its tables are built;
// every operation here is a pure function and safe to call concurrently.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace boomspec {

using Elt = std::uint32_t;

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 24;

// --- polynomial-over-GF(2) helpers (bit i = coefficient of X^i) ---
int poly_degree(std::uint64_t p);
std::uint64_t poly_mul2(std::uint64_t a, std::uint64_t b);
std::uint64_t poly_mod2(std::uint64_t a, std::uint64_t m);
// Trial division by every polynomial of degree 1..deg/2.
bool is_irreducible(std::uint64_t m);
// Smallest irreducible of degree k by integer value of the bit encoding
// (equivalently: lexicographically smallest coefficient string).
std::uint32_t default_modulus(int k);

struct FieldSpec {
  int k = 0;                   // extension degree
  std::uint32_t modulus = 0;   // irreducible polynomial, bit k set
  Elt generator = 0;           // multiplicative generator (0 until tables built)
  std::vector<Elt> exp;        // exp[i] = g^i, length Q-1 (empty until built)
  std::vector<std::int32_t> log;  // log[x], log[0] = -1

  std::uint32_t Q() const { return 1u << k; }
  std::uint32_t order() const { return (1u << k) - 1; }  // |GF(2^k)*|
  bool has_tables() const { return !exp.empty(); }
};

// Construct without tables; throws std::invalid_argument on a bad degree
// or a reducible/wrong-degree modulus. modulus==0 selects the default.
FieldSpec make_spec(int k, std::uint32_t modulus = 0);
// Fill exp/log (k <= 24 enforced by make_spec); idempotent.
void build_tables(FieldSpec& spec);
// make_spec + build_tables.
FieldSpec make_field(int k, std::uint32_t modulus = 0);

Elt gf_add(const FieldSpec& spec, Elt x, Elt y);
// Shift-and-xor product, no tables needed. Reference path.
Elt gf_mul_schoolbook(const FieldSpec& spec, Elt x, Elt y);
// Table-backed when available, else schoolbook.
Elt gf_mul(const FieldSpec& spec, Elt x, Elt y);
Elt gf_inv(const FieldSpec& spec, Elt x);   // throws std::domain_error on 0
Elt gf_div(const FieldSpec& spec, Elt x, Elt y);
// x^e with 0^0 = 1 by convention; e reduced mod 2^k-1 for x != 0.
Elt gf_pow(const FieldSpec& spec, Elt x, std::uint64_t e);

// Tr_l^k(x) = sum of x^(2^(l*i)), i = 0..k/l-1. Throws std::domain_error
// unless l divides k. Result lies in GF(2^l).
Elt trace(const FieldSpec& spec, int l, Elt x);
// Nr_l^k(x) = product of the same conjugates.
Elt norm(const FieldSpec& spec, int l, Elt x);
// x in GF(2^l) iff x^(2^l) = x.
bool in_subfield(const FieldSpec& spec, int l, Elt x);
// Partial trace polynomial: sum of x^(2^i), i = 0..m-1, for any m >= 1.
// Coincides with trace(spec, 1, .) restricted to GF(2^m) but is defined
// (and used) on the whole field.
Elt partial_trace(const FieldSpec& spec, int m, Elt x);

// Config file: one `k=0xHEX` entry per line, '#' comments, blank lines ok.
std::map<int, std::uint32_t> parse_field_config(std::istream& in);
std::map<int, std::uint32_t> load_field_config(const std::string& path);

}  // namespace boomspec
