#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>
#include <sstream>

#include "boomspec/closedform.hpp"
#include "boomspec/field.hpp"
#include "boomspec/spectra.hpp"
#include "boomspec/structure.hpp"
#include "doctest.h"

using namespace boomspec;

namespace {

std::shared_ptr<const FieldSpec> field(int k, std::uint32_t mod = 0) {
  return std::make_shared<const FieldSpec>(make_field(k, mod));
}

PermTable identity_perm(int k) {
  auto spec = field(k);
  std::ostringstream text;
  for (std::uint32_t x = 0; x < spec->Q(); ++x)
    text << std::hex << "0x" << x << " 0x" << x << "\n";
  std::istringstream in(text.str());
  return load_perm_table(spec, in);
}

std::map<long long, long long> as_map(const SpectrumMultiset& m) {
  return m.counts;
}

}  // namespace

TEST_CASE("permutation exponents") {
  CHECK(is_permutation_exponent(4, 13));
  CHECK_FALSE(is_permutation_exponent(4, 3));  // gcd(3, 15) = 3
  CHECK(is_permutation_exponent(8, 83));
  CHECK(is_permutation_exponent(8, 254));
  CHECK_FALSE(is_permutation_exponent(8, 85));
  CHECK(is_permutation_exponent(16, 4351));
  CHECK(is_permutation_exponent(16, 4367));
  CHECK_FALSE(is_permutation_exponent(6, 15));  // gcd(15, 63) = 3
}

TEST_CASE("power permutation construction") {
  PermTable P = build_power_perm(field(4), 13);
  CHECK(P.exponent == 13u);
  std::set<Elt> image(P.forward.begin(), P.forward.end());
  CHECK(image.size() == P.Q());
  for (Elt x = 0; x < P.Q(); ++x) {
    CHECK(P.forward[x] == gf_pow(*P.spec, x, 13));
    CHECK(P.inverse[P.forward[x]] == x);
  }
  PermTable R = build_power_perm(field(8), 83);
  for (Elt x = 0; x < R.Q(); ++x) CHECK(R.inverse[R.forward[x]] == x);
  CHECK_THROWS_AS(build_power_perm(field(4), 3), std::domain_error);
}

TEST_CASE("differential counts and spectra") {
  PermTable P = build_power_perm(field(4), 13);
  // row at a = 1: one 4 (at b = 1), six 2s, nine 0s
  CHECK(as_map(diff_spectrum(P, 1)) ==
        std::map<long long, long long>{{0, 9}, {2, 6}, {4, 1}});
  CHECK(diff_count(P, 1, 1) == 4);
  auto row = diff_row(P, 1);
  CHECK(row.size() == P.Q());
  CHECK(std::accumulate(row.begin(), row.end(), 0ll) == P.Q());
  CHECK(row[0] == 0);  // permutations never cancel a nonzero derivative

  PermTable inv8 = build_power_perm(field(8), 254);
  CHECK(differential_uniformity(inv8) == 4);
  PermTable main2 = build_power_perm(field(8), 83);
  CHECK(as_map(diff_spectrum(main2, 1)) ==
        std::map<long long, long long>{{0, 155}, {2, 96}, {12, 4}, {16, 1}});
}

TEST_CASE("identity map spectra") {
  PermTable I = identity_perm(4);
  CHECK_FALSE(I.exponent.has_value());
  // DDT row a: all Q mass sits at b = a
  for (Elt a = 1; a < I.Q(); ++a)
    for (Elt b = 0; b < I.Q(); ++b)
      CHECK(diff_count(I, a, b) == (a == b ? 16 : 0));
  // BCT of a linear permutation is Q everywhere
  for (Elt a = 1; a < I.Q(); ++a)
    for (Elt b = 1; b < I.Q(); ++b) CHECK(bct_entry(I, a, b) == 16);
  CHECK(boomerang_uniformity(I) == 16);
}

TEST_CASE("bct_entry basics") {
  PermTable P = build_power_perm(field(4), 13);
  for (Elt a = 1; a < P.Q(); ++a) CHECK(bct_entry(P, a, 0) == 16);
  CHECK_THROWS_AS(bct_entry(P, 0, 1), std::domain_error);
  CHECK(bct_entry(P, 1, 1) == 4);   // b = 1: q^2
  CHECK(bct_entry(P, 1, 6) == 6);   // b in mu_3 \ {1}: 3q(q-1)
  CHECK(bct_entry(P, 1, 7) == 6);
}

TEST_CASE("boomerang dominates differential entrywise on the main maps") {
  for (int n : {1, 2}) {
    PermTable P = build_power_perm(field(4 * n), main_exponent(n));
    for (Elt a = 1; a < P.Q(); ++a) {
      auto ddt_row = diff_row(P, a);
      for (Elt b = 1; b < P.Q(); ++b)
        CHECK(bct_entry(P, a, b) >= ddt_row[b]);
    }
  }
}

TEST_CASE("boomerang dominates differential on 50 random 8-bit permutations") {
  std::mt19937 rng(0xdd7bc7u);
  auto spec = field(8);
  long long violations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Elt> fwd(spec->Q());
    std::iota(fwd.begin(), fwd.end(), 0u);
    std::shuffle(fwd.begin(), fwd.end(), rng);
    std::ostringstream text;
    for (std::uint32_t x = 0; x < spec->Q(); ++x)
      text << std::hex << "0x" << x << " 0x" << fwd[x] << "\n";
    std::istringstream in(text.str());
    PermTable P = load_perm_table(spec, in);
    for (Elt a = 1; a < P.Q(); ++a) {
      auto ddt_row = diff_row(P, a);
      for (Elt b = 1; b < P.Q(); ++b)
        violations += bct_entry(P, a, b) < ddt_row[b];
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("bct_entry agrees with the system-solving formulation") {
  for (auto [k, d] : std::vector<std::pair<int, std::uint64_t>>{
           {4, 13}, {4, 14}, {5, 30}, {6, 5}, {8, 83}}) {
    PermTable P = build_power_perm(field(k), d);
    for (Elt a = 1; a < P.Q(); ++a)
      for (Elt b = 1; b < P.Q(); ++b)
        CHECK(bct_entry(P, a, b) == bct_entry_system(P, a, b));
  }
}

TEST_CASE("bct_entry matches on random permutation tables") {
  std::mt19937 rng(20260819);
  for (int trial = 0; trial < 8; ++trial) {
    const int k = 4 + trial % 3;
    auto spec = field(k);
    std::vector<Elt> fwd(spec->Q());
    std::iota(fwd.begin(), fwd.end(), 0u);
    std::shuffle(fwd.begin(), fwd.end(), rng);
    std::ostringstream text;
    for (std::uint32_t x = 0; x < spec->Q(); ++x)
      text << std::hex << "0x" << x << " 0x" << fwd[x] << "\n";
    std::istringstream in(text.str());
    PermTable P = load_perm_table(spec, in);
    for (Elt a = 1; a < P.Q(); ++a)
      for (Elt b = 1; b < P.Q(); ++b)
        CHECK(bct_entry(P, a, b) == bct_entry_system(P, a, b));
  }
}

TEST_CASE("power maps reduce every row to the a = 1 row") {
  PermTable P = build_power_perm(field(8), 83);
  for (Elt a = 1; a < P.Q(); ++a) {
    const Elt fa_inv = gf_inv(*P.spec, P.forward[a]);
    for (Elt b = 1; b < P.Q(); ++b)
      CHECK(bct_entry(P, a, b) == bct_entry(P, 1, gf_mul(*P.spec, b, fa_inv)));
  }
}

TEST_CASE("beta_tilde decomposes the boomerang entry") {
  for (int n : {1, 2}) {
    PermTable P = build_power_perm(field(4 * n), main_exponent(n));
    for (Elt b = 0; b < P.Q(); ++b) {
      long long sum = 0;
      for (Elt c = 1; c < P.Q(); ++c) {
        long long v = beta_tilde(P, b, c);
        CHECK(v % 2 == 0);  // solutions pair up under the swap symmetry
        sum += v;
      }
      CHECK(sum == bct_entry(P, 1, b));
    }
  }
}

TEST_CASE("beta_tilde at b = 0 recovers the differential row") {
  PermTable P = build_power_perm(field(8), 83);
  for (Elt c = 1; c < P.Q(); ++c)
    CHECK(beta_tilde(P, 0, c) == diff_count(P, 1, c));
}

TEST_CASE("beta_tilde at c = 1 sees exactly the quadratic subfield") {
  // n = 1: q^2 when b lies in the GF(4) subfield of GF(16), else 0
  PermTable P = build_power_perm(field(4), 13);
  for (Elt b = 0; b < P.Q(); ++b)
    CHECK(beta_tilde(P, b, 1) == (in_subfield(*P.spec, 2, b) ? 4 : 0));
}

TEST_CASE("boomerang rows are even away from b = 0") {
  for (int n : {1, 2}) {
    PermTable P = build_power_perm(field(4 * n), main_exponent(n));
    auto row = boomerang_row(P, 1);
    CHECK(row[0] == P.Q());
    for (Elt b = 1; b < P.Q(); ++b) CHECK(row[b] % 2 == 0);
  }
}

TEST_CASE("mu_sum_beta_tilde sums over the punctured circle") {
  for (int n : {1, 2}) {
    PermTable P = build_power_perm(field(4 * n), main_exponent(n));
    const std::uint32_t q = 1u << n;
    MuGroup mu = mu_enumerate(*P.spec, q + 1);
    for (Elt b = 0; b < P.Q(); b += (n == 1 ? 1 : 3)) {
      long long want = 0;
      for (Elt c : mu.elements)
        if (c != 1) want += beta_tilde(P, b, c);
      CHECK(mu_sum_beta_tilde(P, b) == want);
    }
  }
  PermTable W = build_power_perm(field(6), 5);
  CHECK_THROWS_AS(mu_sum_beta_tilde(W, 1), std::domain_error);
}

TEST_CASE("mu_sum_beta_tilde worked values at n = 2") {
  PermTable P = build_power_perm(field(8), 83);
  const FieldSpec& spec = *P.spec;
  CHECK(mu_sum_beta_tilde(P, 0) == 48);  // (q-1)q^2
  CHECK(mu_sum_beta_tilde(P, 1) == 0);
  for (Elt b = 2; b < P.Q(); ++b)
    if (in_subfield(spec, 2, b))  // GF(q) \ GF(2): q^2
      CHECK(mu_sum_beta_tilde(P, b) == 16);
}

TEST_CASE("perm table file round-trip and validation") {
  PermTable P = build_power_perm(field(4), 13);
  std::ostringstream out;
  save_perm_table(P, out);
  std::istringstream in(out.str());
  PermTable R = load_perm_table(field(4), in);
  CHECK(R.forward == P.forward);
  CHECK(R.inverse == P.inverse);
  CHECK_FALSE(R.exponent.has_value());  // tables carry no exponent

  auto reject = [](const std::string& text) {
    std::istringstream bad(text);
    CHECK_THROWS_AS(load_perm_table(field(2), bad), std::invalid_argument);
  };
  reject("0x0 0x0\n0x1 0x1\n0x2 0x2\n");               // missing an entry
  reject("0x0 0x0\n0x1 0x1\n0x2 0x2\n0x2 0x3\n");      // duplicate input
  reject("0x0 0x0\n0x1 0x1\n0x2 0x2\n0x3 0x2\n");      // not a bijection
  reject("0x0 0x0\n0x1 0x1\n0x2 0x2\n0x3 0x7\n");      // value out of range
  reject("0x0 0x0\n0x1 0x1\n0x2 0x2\nbogus line\n");   // unparseable
}

TEST_CASE("parallel rows equal the serial reference for any worker count") {
  for (auto [k, d] : std::vector<std::pair<int, std::uint64_t>>{{8, 83},
                                                                {8, 254}}) {
    PermTable P = build_power_perm(field(k), d);
    auto ref = boomerang_row_serial(P, 1);
    for (int w : {0, 1, 2, 8}) CHECK(boomerang_row(P, 1, w) == ref);
  }
}

TEST_CASE("row sums match the squared differential spectrum") {
  // sum_b beta(1,b) = sum_c N(c)^2, including b = 0
  for (auto [n, want] : std::vector<std::pair<int, long long>>{{1, 40},
                                                               {2, 1216}}) {
    PermTable P = build_power_perm(field(4 * n), main_exponent(n));
    auto row = boomerang_row(P, 1);
    long long total = std::accumulate(row.begin(), row.end(), 0ll);
    CHECK(total == want);
    long long sq = 0;
    for (Elt c = 0; c < P.Q(); ++c) {
      long long nc = diff_count(P, 1, c);
      sq += nc * nc;
    }
    CHECK(sq == want);
  }
}

TEST_CASE("boomerang spectrum and uniformity") {
  PermTable P = build_power_perm(field(4), 13);
  CHECK(as_map(boomerang_spectrum(P, 1)) ==
        std::map<long long, long long>{{0, 8}, {2, 4}, {4, 1}, {6, 2}});
  CHECK(boomerang_uniformity(P) == 6);
  PermTable inv8 = build_power_perm(field(8), 254);
  CHECK(boomerang_uniformity(inv8) == 6);
  // the general-table path enforces a size cap
  auto big = field(13);
  std::ostringstream text;
  for (std::uint32_t x = 0; x < big->Q(); ++x)
    text << std::hex << "0x" << x << " 0x" << x << "\n";
  std::istringstream in(text.str());
  PermTable I = load_perm_table(big, in);
  CHECK_THROWS_AS(boomerang_uniformity(I), std::length_error);
}

TEST_CASE("the spectrum multiset does not depend on the modulus") {
  PermTable A = build_power_perm(field(8, 0x11b), 254);
  PermTable B = build_power_perm(field(8, 0x11d), 254);
  CHECK(as_map(boomerang_spectrum(A, 1)) == as_map(boomerang_spectrum(B, 1)));
  CHECK(as_map(diff_spectrum(A, 1)) == as_map(diff_spectrum(B, 1)));
}
