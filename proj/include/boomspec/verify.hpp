#pragma once
// Brute-force vs closed-form verification: entrywise boomerang and
// differential sweeps, the beta_tilde decomposition, counting identities,
// auxiliary lemma checks, and cross-family spot checks. Reports render to
// one canonical text schema (documented in the README) that contains no
// timings and no worker counts, so a report is byte-identical for any
// parallelism level; wall-times live only in VerificationReport::phase_seconds.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "boomspec/closedform.hpp"
#include "boomspec/field.hpp"
#include "boomspec/spectra.hpp"

namespace boomspec {

struct Mismatch {
  Elt b = 0;
  BRegion region = BRegion::ZERO;
  long long brute = 0;
  long long predicted = 0;
};

struct RegionStat {
  long long count = 0;
  long long expected = 0;  // predicted beta for the region
  long long mismatches = 0;
};

struct Table1Result {
  std::string label;  // "inverse", "gold", "kasami-like"
  int k = 0;
  int param = 0;  // gold: raw s before gcd; others: 0
  std::uint64_t d = 0;
  long long uniformity = 0;
  std::vector<long long> allowed;
  bool pass = false;
};

struct VerificationReport {
  int n = 0;
  int k = 0;
  std::uint32_t modulus = 0;
  std::uint64_t exponent = 0;

  // [boomerang]
  bool boom_ran = false;
  std::array<RegionStat, kNumRegions> boom_regions{};
  std::vector<Mismatch> boom_mismatches;  // sorted by b
  long long uniformity = 0;
  long long uniformity_expected = 0;
  bool boom_pass = false;

  // [differential]
  bool diff_ran = false;
  SpectrumMultiset diff_spectrum_all;  // over every b
  long long diff_sum = 0;
  long long diff_mismatch_count = 0;
  bool diff_pass = false;

  // [decomposition] (full beta_tilde sweep; runs at n <= 2)
  bool decomp_ran = false;
  long long decomp_checked = 0;
  long long decomp_beta_mismatches = 0;
  long long c1_mismatches = 0;
  long long s2_mismatches = 0;
  long long mu_mismatches = 0;
  bool mu_vanishes_pass = false;  // mu-sum = 0 whenever Tr_n^{4n}(b) != 0
  long long outside_sum = 0;      // mu-sums totalled over TRACE_ZERO_OUTSIDE
  long long outside_expected = 0;
  bool decomp_pass = false;

  // [identities]
  bool ident_ran = false;
  long long global_sum = 0;  // sum of beta(1,b) over all b
  long long global_sum_expected = 0;
  bool fcase_pass = false;      // \{x : F(x)+F(x+1)=1\} = GF(q^2)
  bool dichotomy_pass = false;  // trA ^ U in {0,1} for every Tr != 0 b
  long long s2_count = 0, s2_prime_count = 0, s2_expected = 0;
  bool partition_pass = false;
  bool ident_pass = false;

  // [auxiliary]
  bool aux_ran = false;
  bool scard_pass = false;
  bool aprop_pass = false;
  std::vector<Table1Result> families;
  bool aux_pass = false;

  bool pass = false;

  // per-b data (CSV emission); index = b
  std::vector<long long> brute_row, predicted_row;
  std::vector<BRegion> region_by_b;

  // wall-times, never rendered into the canonical text
  std::vector<std::pair<std::string, double>> phase_seconds;
};

// Individual verification passes (each returns a report with just its
// section filled; run_full_verify merges them all).
VerificationReport verify_boomerang_theorem(const FieldSpec& spec, int n,
                                            int workers = 0);
VerificationReport verify_differential(const FieldSpec& spec, int n);
VerificationReport verify_decomposition(const FieldSpec& spec, int n);

// Trace-cell counts: every pair cell has size Q/4, every admissible triple
// cell Q/8. Vacuous triple cases (m = 2) pass.
bool verify_scard(int m, std::string* detail = nullptr);
// z = c + 1/c hit exactly twice in the branch selected by trace(1,1/z),
// zero times in the other; cross-checked against chi_decompose.
bool verify_aprop(int m, std::string* detail = nullptr);

enum class Family { INVERSE, GOLD, KASAMI_LIKE };
// Brute-force uniformity of the family exponent at degree k, checked for
// membership in the family's allowed value set. GOLD takes the raw Gold
// parameter s (exponent 2^s+1). Throws std::domain_error when the family
// exponent is not a permutation exponent at degree k.
Table1Result cross_validate_table1(Family family, int k, int param = 0);

struct VerifyOptions {
  int workers = 0;
  std::uint32_t modulus = 0;  // 0 = default modulus for k = 4n
  bool families = true;       // include the cross-family spot checks
};

VerificationReport run_full_verify(int n, const VerifyOptions& opt = {});

// Canonical structured text (schema boomspec-verify-report v1).
std::string render_report(const VerificationReport& r, int mismatch_cap = 100);
// CSV: header b_hex,region,brute,predicted,match + one row per b.
std::string render_verify_csv(const VerificationReport& r);

struct CsvRow {
  Elt b = 0;
  std::string region;
  long long brute = 0;
  long long predicted = 0;
  bool match = false;
};
std::vector<CsvRow> parse_verify_csv(std::istream& in);

}  // namespace boomspec
