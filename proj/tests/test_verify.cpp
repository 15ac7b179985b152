#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "boomspec/closedform.hpp"
#include "boomspec/field.hpp"
#include "boomspec/spectra.hpp"
#include "boomspec/verify.hpp"
#include "doctest.h"

using namespace boomspec;

TEST_CASE("boomerang verification passes at n = 1 and n = 2") {
  for (int n : {1, 2}) {
    FieldSpec spec = make_field(4 * n);
    VerificationReport r = verify_boomerang_theorem(spec, n);
    CHECK(r.boom_ran);
    CHECK(r.boom_pass);
    CHECK(r.boom_mismatches.empty());
    CHECK(r.uniformity == closed_boomerang_uniformity(n));
    CHECK(r.uniformity_expected == r.uniformity);
    long long total = 0;
    for (const auto& s : r.boom_regions) {
      CHECK(s.mismatches == 0);
      total += s.count;
    }
    CHECK(total == spec.Q());
    CHECK(r.brute_row.size() == spec.Q());
    CHECK(r.predicted_row == r.brute_row);
    for (auto [reg, c] : region_cardinalities(n))
      CHECK(r.boom_regions[static_cast<int>(reg)].count == c);
  }
}

TEST_CASE("differential verification matches the frozen spectra") {
  FieldSpec f1 = make_field(4);
  VerificationReport r1 = verify_differential(f1, 1);
  CHECK(r1.diff_pass);
  CHECK(r1.diff_mismatch_count == 0);
  CHECK(r1.diff_sum == 16);
  CHECK(r1.diff_spectrum_all.counts ==
        std::map<long long, long long>{{0, 9}, {2, 6}, {4, 1}});

  FieldSpec f2 = make_field(8);
  VerificationReport r2 = verify_differential(f2, 2);
  CHECK(r2.diff_pass);
  CHECK(r2.diff_sum == 256);
  CHECK(r2.diff_spectrum_all.counts ==
        std::map<long long, long long>{{0, 155}, {2, 96}, {12, 4}, {16, 1}});
}

TEST_CASE("decomposition verification, n = 1") {
  FieldSpec spec = make_field(4);
  VerificationReport r = verify_decomposition(spec, 1);
  CHECK(r.decomp_ran);
  CHECK(r.decomp_pass);
  CHECK(r.decomp_checked == 16);
  CHECK(r.decomp_beta_mismatches == 0);
  CHECK(r.c1_mismatches == 0);
  CHECK(r.s2_mismatches == 0);
  CHECK(r.mu_mismatches == 0);
  CHECK(r.mu_vanishes_pass);
  CHECK(r.outside_sum == 0);
  CHECK(r.outside_expected == 0);
}

TEST_CASE("decomposition verification, n = 2") {
  FieldSpec spec = make_field(8);
  VerificationReport r = verify_decomposition(spec, 2);
  CHECK(r.decomp_pass);
  CHECK(r.decomp_checked == 256);
  CHECK(r.outside_sum == 384);
  CHECK(r.outside_expected == 384);
}

TEST_CASE("decomposition is skipped beyond n = 2") {
  FieldSpec spec = make_field(12);
  VerificationReport r = verify_decomposition(spec, 3);
  CHECK_FALSE(r.decomp_ran);
}

TEST_CASE("the b = 0 row splits into the three closed-form terms") {
  // c1 + s2 + mu at ZERO: 4+8+4 = 16 (n = 1) and 16+192+48 = 256 (n = 2)
  CHECK(predicted_c1_term(1, BRegion::ZERO) == 4);
  CHECK(predicted_s2_sum(1, BRegion::ZERO) == 8);
  CHECK(predicted_mu_sum(1, BRegion::ZERO) == 4);
  CHECK(predicted_c1_term(2, BRegion::ZERO) == 16);
  CHECK(predicted_s2_sum(2, BRegion::ZERO) == 192);
  CHECK(predicted_mu_sum(2, BRegion::ZERO) == 48);
}

TEST_CASE("trace-cell cardinalities hold for m = 2..8") {
  for (int m = 2; m <= 8; ++m) {
    std::string detail;
    CHECK(verify_scard(m, &detail));
    CHECK_FALSE(detail.empty());
  }
}

TEST_CASE("the two-representation property holds for m = 2..8") {
  for (int m = 2; m <= 8; ++m) {
    std::string detail;
    CHECK(verify_aprop(m, &detail));
    CHECK_FALSE(detail.empty());
  }
}

TEST_CASE("family cross-validation") {
  Table1Result inv8 = cross_validate_table1(Family::INVERSE, 8);
  CHECK(inv8.pass);
  CHECK(inv8.uniformity == 6);
  CHECK(inv8.d == 254);
  CHECK(inv8.allowed == std::vector<long long>{2, 4, 6});

  Table1Result gold = cross_validate_table1(Family::GOLD, 6, 2);
  CHECK(gold.pass);
  CHECK(gold.uniformity == 4);
  CHECK(gold.d == 5);
  CHECK(gold.allowed == std::vector<long long>{4, 12});

  Table1Result inv5 = cross_validate_table1(Family::INVERSE, 5);
  CHECK(inv5.pass);
  CHECK(inv5.uniformity == 2);

  Table1Result kas4 = cross_validate_table1(Family::KASAMI_LIKE, 4);
  CHECK(kas4.pass);
  CHECK(kas4.d == 7);
  CHECK(kas4.uniformity == 6);

  // d = 15 is not a permutation exponent of GF(2^6)
  CHECK_THROWS_AS(cross_validate_table1(Family::KASAMI_LIKE, 6),
                  std::domain_error);
  CHECK_THROWS_AS(cross_validate_table1(Family::KASAMI_LIKE, 5),
                  std::domain_error);
}

TEST_CASE("full verification runs green at n = 1 and n = 2") {
  for (int n : {1, 2}) {
    VerificationReport r = run_full_verify(n);
    CHECK(r.pass);
    CHECK(r.boom_pass);
    CHECK(r.diff_pass);
    CHECK(r.decomp_pass);
    CHECK(r.ident_pass);
    CHECK(r.aux_pass);
    CHECK(r.fcase_pass);
    CHECK(r.dichotomy_pass);
    CHECK(r.partition_pass);
    CHECK(r.global_sum == (n == 1 ? 40 : 1216));
    CHECK(r.global_sum == r.global_sum_expected);
    CHECK(r.s2_count == r.s2_prime_count);
    CHECK(r.s2_count == r.s2_expected);
    CHECK(r.families.size() == 3);
    for (const auto& f : r.families) CHECK(f.pass);
  }
  CHECK_THROWS_AS(run_full_verify(0), std::invalid_argument);
  CHECK_THROWS_AS(run_full_verify(5), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across worker counts") {
  std::string first;
  for (int w : {1, 2, 8}) {
    VerifyOptions opt;
    opt.workers = w;
    VerificationReport r = run_full_verify(2, opt);
    std::string text = render_report(r);
    CHECK(text.find("overall PASS") != std::string::npos);
    CHECK(text.find("boomspec-verify-report v1") == 0);
    if (first.empty())
      first = text;
    else
      CHECK(text == first);
  }
}

TEST_CASE("report carries every section") {
  VerificationReport r = run_full_verify(1);
  const std::string text = render_report(r);
  for (const char* needle :
       {"[boomerang]", "[differential]", "[decomposition]", "[identities]",
        "[auxiliary]", "uniformity 6 expected 6", "global-sum 40 expected 40",
        "witness-dichotomy PASS", "family inverse k=8", "overall PASS"})
    CHECK(text.find(needle) != std::string::npos);
}

TEST_CASE("verification csv round-trips") {
  VerificationReport r = run_full_verify(1);
  const std::string csv = render_verify_csv(r);
  CHECK(csv.rfind("b_hex,region,brute,predicted,match\n", 0) == 0);
  std::istringstream in(csv);
  auto rows = parse_verify_csv(in);
  REQUIRE(rows.size() == 16);
  FieldSpec spec = make_field(4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].b == i);
    CHECK(rows[i].brute == r.brute_row[i]);
    CHECK(rows[i].predicted == r.predicted_row[i]);
    CHECK(rows[i].match == (rows[i].brute == rows[i].predicted));
    CHECK(rows[i].match);
    CHECK(rows[i].region == region_name(region_of(spec, 1, static_cast<Elt>(i))));
  }
  std::istringstream bad("b_hex,region\n");
  CHECK_THROWS_AS(parse_verify_csv(bad), std::invalid_argument);
  std::istringstream bad2("b_hex,region,brute,predicted,match\n0x0,ZERO,16\n");
  CHECK_THROWS_AS(parse_verify_csv(bad2), std::invalid_argument);
}

TEST_CASE("derivative-one level set is the quadratic subfield") {
  // brute-force the set {x : F(x) + F(x+1) = 1} and compare with GF(q^2)
  for (int n : {1, 2}) {
    FieldSpec spec = make_field(4 * n);
    PermTable P = build_power_perm(
        std::make_shared<const FieldSpec>(spec), main_exponent(n));
    long long size = 0;
    for (Elt x = 0; x < spec.Q(); ++x) {
      const bool in_set = (P.forward[x] ^ P.forward[x ^ 1]) == 1;
      CHECK(in_set == in_subfield(spec, 2 * n, x));
      size += in_set;
    }
    CHECK(size == (1ll << (2 * n)));
  }
}
