#include "boomspec/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace boomspec {

static void require_tables(const FieldSpec& spec) {
  if (!spec.has_tables())
    throw std::invalid_argument("operation requires a table-built FieldSpec");
}

MuGroup mu_enumerate(const FieldSpec& spec, std::uint32_t m) {
  require_tables(spec);
  const std::uint32_t N = spec.order();
  if (m == 0 || N % m != 0)
    throw std::domain_error("mu_enumerate: m must divide 2^k-1");
  MuGroup g;
  g.m = static_cast<int>(m);
  g.elements.reserve(m);
  const std::uint32_t step = N / m;
  for (std::uint32_t i = 0; i < m; ++i) g.elements.push_back(spec.exp[i * step % N]);
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

bool mu_member(const FieldSpec& spec, std::uint32_t m, Elt x) {
  if (m == 0 || spec.order() % m != 0)
    throw std::domain_error("mu_member: m must divide 2^k-1");
  if (x == 0) return false;
  return gf_pow(spec, x, m) == 1;
}

// Inverse of a mod m (m small, gcd(a,m)=1).
static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(m),
               nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t qd = r / nr;
    std::int64_t tmp = t - qd * nt;
    t = nt;
    nt = tmp;
    tmp = r - qd * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::logic_error("inv_mod: inputs not coprime");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

UnitFactorization unit_factorize(const FieldSpec& spec, Elt x) {
  require_tables(spec);
  if (spec.k % 4 != 0)
    throw std::domain_error("unit_factorize: field degree must be 4n");
  if (x == 0) throw std::domain_error("unit_factorize: x must be nonzero");
  const std::uint64_t q = 1ull << (spec.k / 4);
  const std::uint64_t N = spec.order();
  const std::uint64_t ms[3] = {q - 1, q + 1, q * q + 1};
  const std::uint64_t e = static_cast<std::uint64_t>(spec.log[x]);
  Elt f[3];
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t cof = N / ms[i];
    // projector exponent: cof * (cof^-1 mod m_i), =1 mod m_i, =0 mod others
    const std::uint64_t proj = cof % N * (inv_mod(cof, ms[i])) % N;
    f[i] = spec.exp[static_cast<std::uint32_t>(
        static_cast<unsigned __int128>(e) * proj % N)];
  }
  UnitFactorization out{f[0], f[1], f[2]};
  if (gf_mul(spec, gf_mul(spec, out.a, out.u), out.t) != x)
    throw std::logic_error("unit_factorize: product check failed");
  return out;
}

SubfieldEmbedding make_embedding(const FieldSpec& small, const FieldSpec& big) {
  if (big.k % small.k != 0)
    throw std::domain_error("make_embedding: small degree must divide big degree");
  const int m = small.k;
  SubfieldEmbedding e;
  for (Elt c = 2; c < big.Q(); ++c) {
    // Horner evaluation of the small modulus at c, in the big field
    Elt acc = 0;
    for (int bit = m; bit >= 0; --bit)
      acc = gf_mul(big, acc, c) ^ ((small.modulus >> bit) & 1);
    if (acc == 0) {
      e.theta = c;
      break;
    }
  }
  if (e.theta == 0) throw std::logic_error("make_embedding: no root found");
  e.theta_pow.assign(m, 1);
  for (int i = 1; i < m; ++i) e.theta_pow[i] = gf_mul(big, e.theta_pow[i - 1], e.theta);
  return e;
}

Elt embed(const FieldSpec& big, const SubfieldEmbedding& e, Elt x) {
  Elt acc = 0;
  for (std::size_t i = 0; i < e.theta_pow.size(); ++i)
    if (x >> i & 1) acc ^= e.theta_pow[i];
  (void)big;
  return acc;
}

ChiContext make_chi_context(int m, std::uint32_t small_modulus) {
  ChiContext ctx;
  ctx.small = make_field(m, small_modulus);
  ctx.ambient = make_field(2 * m);
  ctx.emb = make_embedding(ctx.small, ctx.ambient);
  ctx.artin_pre.assign(ctx.ambient.Q(), ~0u);
  for (Elt u = 0; u < ctx.ambient.Q(); ++u) {
    Elt t = gf_mul(ctx.ambient, u, u) ^ u;
    if (ctx.artin_pre[t] == ~0u) ctx.artin_pre[t] = u;
  }
  return ctx;
}

ChiDecomposition chi_decompose(const ChiContext& ctx, Elt z) {
  if (z == 0) throw std::domain_error("chi_decompose: z must be nonzero");
  const Elt iz = gf_inv(ctx.small, z);
  const Elt tr = trace(ctx.small, 1, iz);
  // c = z*u with u^2 + u = 1/z^2; the right side embeds into the ambient
  // field with absolute trace 0, so a preimage always exists there.
  const Elt t = embed(ctx.ambient, ctx.emb, gf_mul(ctx.small, iz, iz));
  const Elt u = ctx.artin_pre[t];
  if (u == ~0u) throw std::logic_error("chi_decompose: no Artin-Schreier preimage");
  const Elt ez = embed(ctx.ambient, ctx.emb, z);
  ChiDecomposition out;
  out.c1 = gf_mul(ctx.ambient, ez, u);
  out.c2 = out.c1 ^ ez;
  out.branch = tr == 0 ? ChiBranch::SUBFIELD_PAIR : ChiBranch::UNIT_CIRCLE_PAIR;
  if (gf_mul(ctx.ambient, out.c1, out.c2) != 1)
    throw std::logic_error("chi_decompose: product of roots is not 1");
  return out;
}

}  // namespace boomspec
