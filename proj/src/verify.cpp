#include "boomspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "boomspec/structure.hpp"

namespace boomspec {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void fill_header(VerificationReport& r, const FieldSpec& spec, int n) {
  r.n = n;
  r.k = spec.k;
  r.modulus = spec.modulus;
  r.exponent = main_exponent(n);
}

std::vector<BRegion> classify_all(const FieldSpec& spec, int n) {
  std::vector<BRegion> out(spec.Q());
  for (Elt b = 0; b < spec.Q(); ++b) out[b] = region_of(spec, n, b);
  return out;
}

}  // namespace

VerificationReport verify_boomerang_theorem(const FieldSpec& spec, int n,
                                            int workers) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  fill_header(r, spec, n);
  r.boom_ran = true;

  auto spec_ptr = std::make_shared<const FieldSpec>(spec);
  PermTable P = build_power_perm(spec_ptr, r.exponent);
  r.brute_row = boomerang_row(P, 1, workers);
  r.region_by_b = classify_all(spec, n);
  r.predicted_row.resize(spec.Q());

  for (int i = 0; i < kNumRegions; ++i)
    r.boom_regions[i].expected = predicted_beta(n, static_cast<BRegion>(i));
  for (Elt b = 0; b < spec.Q(); ++b) {
    const BRegion reg = r.region_by_b[b];
    const auto ri = static_cast<int>(reg);
    r.predicted_row[b] = predicted_beta(n, reg);
    ++r.boom_regions[ri].count;
    if (r.brute_row[b] != r.predicted_row[b]) {
      ++r.boom_regions[ri].mismatches;
      r.boom_mismatches.push_back({b, reg, r.brute_row[b], r.predicted_row[b]});
    }
  }
  r.uniformity = 0;
  for (Elt b = 1; b < spec.Q(); ++b)
    r.uniformity = std::max(r.uniformity, r.brute_row[b]);
  r.uniformity_expected = closed_boomerang_uniformity(n);
  r.boom_pass = r.boom_mismatches.empty() && r.uniformity == r.uniformity_expected;
  r.pass = r.boom_pass;
  r.phase_seconds.emplace_back("boomerang", seconds_since(t0));
  return r;
}

VerificationReport verify_differential(const FieldSpec& spec, int n) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  fill_header(r, spec, n);
  r.diff_ran = true;

  auto spec_ptr = std::make_shared<const FieldSpec>(spec);
  PermTable P = build_power_perm(spec_ptr, r.exponent);
  auto row = diff_row(P, 1);
  auto regions = classify_all(spec, n);
  r.diff_sum = 0;
  for (Elt b = 0; b < spec.Q(); ++b) {
    ++r.diff_spectrum_all.counts[row[b]];
    ++r.diff_spectrum_all.total;
    r.diff_sum += row[b];
    if (row[b] != predicted_diff_count(n, regions[b])) ++r.diff_mismatch_count;
  }
  r.diff_pass = r.diff_mismatch_count == 0 &&
                r.diff_sum == static_cast<long long>(spec.Q());
  r.pass = r.diff_pass;
  r.phase_seconds.emplace_back("differential", seconds_since(t0));
  return r;
}

VerificationReport verify_decomposition(const FieldSpec& spec, int n) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  fill_header(r, spec, n);
  if (n > 2) return r;  // decomp_ran stays false -> rendered as SKIP
  r.decomp_ran = true;

  auto spec_ptr = std::make_shared<const FieldSpec>(spec);
  PermTable P = build_power_perm(spec_ptr, r.exponent);
  auto regions = classify_all(spec, n);
  auto boom = boomerang_row_serial(P, 1);
  auto buckets = derivative_buckets(P);
  const std::uint32_t q = 1u << n;

  // mu_{q+1} \ {1} and S2, as c-sets
  MuGroup mu = mu_enumerate(spec, q + 1);
  std::vector<Elt> mu_star;
  for (Elt c : mu.elements)
    if (c != 1) mu_star.push_back(c);
  std::vector<Elt> s2_set;
  for (Elt c = 0; c < spec.Q(); ++c)
    if (regions[c] == BRegion::S2) s2_set.push_back(c);

  auto pairs_in = [&](Elt c, Elt b) {
    const auto& imgs = buckets[c];
    long long nn = 0;
    for (Elt v : imgs)
      if (std::binary_search(imgs.begin(), imgs.end(), v ^ b)) ++nn;
    return nn;
  };

  r.mu_vanishes_pass = true;
  for (Elt b = 0; b < spec.Q(); ++b) {
    ++r.decomp_checked;
    long long total = 0;
    for (Elt c = 0; c < spec.Q(); ++c) total += pairs_in(c, b);
    if (total != boom[b]) ++r.decomp_beta_mismatches;

    const long long c1 = pairs_in(1, b);
    long long s2sum = 0;
    for (Elt c : s2_set) s2sum += pairs_in(c, b);
    long long musum = 0;
    for (Elt c : mu_star) musum += pairs_in(c, b);

    const BRegion reg = regions[b];
    if (c1 != predicted_c1_term(n, reg)) ++r.c1_mismatches;
    if (s2sum != predicted_s2_sum(n, reg)) ++r.s2_mismatches;
    if (musum != predicted_mu_sum(n, reg)) ++r.mu_mismatches;
    if (trace(spec, n, b) != 0 && musum != 0) r.mu_vanishes_pass = false;
    if (reg == BRegion::TRACE_ZERO_OUTSIDE) r.outside_sum += musum;
  }
  const long long qq = q;
  r.outside_expected = (qq * qq * qq - qq * qq) * qq * (qq - 2);
  r.decomp_pass = r.decomp_beta_mismatches == 0 && r.c1_mismatches == 0 &&
                  r.s2_mismatches == 0 && r.mu_mismatches == 0 &&
                  r.mu_vanishes_pass && r.outside_sum == r.outside_expected;
  r.pass = r.decomp_pass;
  r.phase_seconds.emplace_back("decomposition", seconds_since(t0));
  return r;
}

bool verify_scard(int m, std::string* detail) {
  FieldSpec spec = make_field(m);
  const std::uint32_t Q = spec.Q();
  std::vector<Elt> trv(Q);
  for (Elt x = 0; x < Q; ++x) trv[x] = trace(spec, 1, x);

  long long pairs = 0, triples = 0;
  for (Elt g = 2; g < Q; ++g) {
    ++pairs;
    long long cell[2][2] = {};
    for (Elt y = 0; y < Q; ++y) ++cell[trv[y]][trv[gf_mul(spec, g, y)]];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (cell[i][j] != Q / 4) {
          if (detail)
            *detail = "pair cell size != Q/4 at gamma=" + std::to_string(g);
          return false;
        }
  }
  for (Elt g1 = 2; g1 < Q; ++g1)
    for (Elt g2 = g1 + 1; g2 < Q; ++g2) {
      if ((g1 ^ g2) <= 1) continue;  // need gamma1 + gamma2 outside GF(2)
      ++triples;
      long long cell[2][2][2] = {};
      for (Elt y = 0; y < Q; ++y)
        ++cell[trv[y]][trv[gf_mul(spec, g1, y)]][trv[gf_mul(spec, g2, y)]];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            if (cell[i][j][l] != Q / 8) {
              if (detail)
                *detail = "triple cell size != Q/8 at gammas " +
                          std::to_string(g1) + "," + std::to_string(g2);
              return false;
            }
    }
  if (detail)
    *detail = std::to_string(pairs) + " pair and " + std::to_string(triples) +
              " triple cell systems exact";
  return true;
}

bool verify_aprop(int m, std::string* detail) {
  ChiContext ctx = make_chi_context(m);
  const std::uint32_t Qs = ctx.small.Q();
  // candidate c sets: embedded GF(2^m)* and mu_{2^m+1} \ {1}
  std::vector<Elt> sub_elts, circle_elts;
  for (Elt z = 1; z < Qs; ++z)
    sub_elts.push_back(embed(ctx.ambient, ctx.emb, z));
  MuGroup circle = mu_enumerate(ctx.ambient, Qs + 1);
  for (Elt c : circle.elements)
    if (c != 1) circle_elts.push_back(c);

  for (Elt z = 1; z < Qs; ++z) {
    const Elt ez = embed(ctx.ambient, ctx.emb, z);
    const Elt tr = trace(ctx.small, 1, gf_inv(ctx.small, z));
    long long in_sub = 0, in_circle = 0;
    for (Elt c : sub_elts)
      if ((c ^ gf_inv(ctx.ambient, c)) == ez) ++in_sub;
    for (Elt c : circle_elts)
      if ((c ^ gf_inv(ctx.ambient, c)) == ez) ++in_circle;
    const long long want_sub = tr == 0 ? 2 : 0;
    const long long want_circle = tr == 0 ? 0 : 2;
    if (in_sub != want_sub || in_circle != want_circle) {
      if (detail)
        *detail = "z=" + std::to_string(z) + ": counts " +
                  std::to_string(in_sub) + "/" + std::to_string(in_circle);
      return false;
    }
    // chi_decompose must return exactly that pair
    ChiDecomposition chi = chi_decompose(ctx, z);
    const bool branch_ok =
        (tr == 0) == (chi.branch == ChiBranch::SUBFIELD_PAIR);
    const bool roots_ok =
        chi.c1 != chi.c2 &&
        (chi.c1 ^ gf_inv(ctx.ambient, chi.c1)) == ez &&
        (chi.c2 ^ gf_inv(ctx.ambient, chi.c2)) == ez;
    if (!branch_ok || !roots_ok) {
      if (detail) *detail = "chi_decompose mismatch at z=" + std::to_string(z);
      return false;
    }
  }
  if (detail)
    *detail = std::to_string(Qs - 1) +
              " z values each with exactly two representations";
  return true;
}

Table1Result cross_validate_table1(Family family, int k, int param) {
  Table1Result t;
  t.k = k;
  t.param = param;
  const long long two_k = 1ll << k;
  switch (family) {
    case Family::INVERSE:
      t.label = "inverse";
      t.d = static_cast<std::uint64_t>(two_k - 2);
      t.allowed = {2, 4, 6};
      break;
    case Family::GOLD: {
      t.label = "gold";
      t.d = (1ull << param) + 1;
      long long s = std::gcd<long long>(param, k);
      t.allowed = {1ll << s, (1ll << s) * ((1ll << s) - 1)};
      std::sort(t.allowed.begin(), t.allowed.end());
      t.allowed.erase(std::unique(t.allowed.begin(), t.allowed.end()),
                      t.allowed.end());
      break;
    }
    case Family::KASAMI_LIKE: {
      if (k % 2 != 0)
        throw std::domain_error("kasami-like family needs even degree");
      t.label = "kasami-like";
      const int kp = k / 2;
      t.d = (1ull << (kp + 1)) - 1;
      t.allowed = {(1ll << kp) + 2};
      break;
    }
  }
  auto spec = std::make_shared<const FieldSpec>(make_field(k));
  PermTable P = build_power_perm(spec, t.d);  // throws on non-permutation d
  t.uniformity = boomerang_uniformity(P);
  t.pass = std::find(t.allowed.begin(), t.allowed.end(), t.uniformity) !=
           t.allowed.end();
  return t;
}

VerificationReport run_full_verify(int n, const VerifyOptions& opt) {
  if (n < 1 || n > 4) throw std::invalid_argument("run_full_verify: n must be 1..4");
  FieldSpec spec = make_field(4 * n, opt.modulus);
  VerificationReport r = verify_boomerang_theorem(spec, n, opt.workers);

  {
    VerificationReport d = verify_differential(spec, n);
    r.diff_ran = d.diff_ran;
    r.diff_spectrum_all = std::move(d.diff_spectrum_all);
    r.diff_sum = d.diff_sum;
    r.diff_mismatch_count = d.diff_mismatch_count;
    r.diff_pass = d.diff_pass;
    r.phase_seconds.insert(r.phase_seconds.end(), d.phase_seconds.begin(),
                           d.phase_seconds.end());
  }
  {
    VerificationReport d = verify_decomposition(spec, n);
    r.decomp_ran = d.decomp_ran;
    r.decomp_checked = d.decomp_checked;
    r.decomp_beta_mismatches = d.decomp_beta_mismatches;
    r.c1_mismatches = d.c1_mismatches;
    r.s2_mismatches = d.s2_mismatches;
    r.mu_mismatches = d.mu_mismatches;
    r.mu_vanishes_pass = d.mu_vanishes_pass;
    r.outside_sum = d.outside_sum;
    r.outside_expected = d.outside_expected;
    r.decomp_pass = d.decomp_pass;
    r.phase_seconds.insert(r.phase_seconds.end(), d.phase_seconds.begin(),
                           d.phase_seconds.end());
  }

  // identities
  {
    auto t0 = std::chrono::steady_clock::now();
    r.ident_ran = true;
    auto spec_ptr = std::make_shared<const FieldSpec>(spec);
    PermTable P = build_power_perm(spec_ptr, r.exponent);
    auto nrow = diff_row(P, 1);
    long long rhs = 0;
    for (long long v : nrow) rhs += v * v;
    r.global_sum = std::accumulate(r.brute_row.begin(), r.brute_row.end(), 0ll);
    r.global_sum_expected = rhs;

    r.fcase_pass = true;
    for (Elt x = 0; x < spec.Q(); ++x) {
      const bool in_level = (P.forward[x] ^ P.forward[x ^ 1]) == 1;
      if (in_level != in_subfield(spec, 2 * n, x)) r.fcase_pass = false;
    }

    r.dichotomy_pass = true;
    r.s2_count = r.s2_prime_count = 0;
    for (Elt b = 0; b < spec.Q(); ++b) {
      try {
        S2Witness w = s2_membership(spec, n, b);
        if (w.verdict == S2Verdict::S2) ++r.s2_count;
        if (w.verdict == S2Verdict::S2_PRIME) ++r.s2_prime_count;
      } catch (const std::logic_error&) {
        r.dichotomy_pass = false;
      }
    }
    const long long q = 1ll << n;
    r.s2_expected = (q * q * q * q - q * q * q) / 2;

    auto cards = region_cardinalities(n);
    std::array<long long, kNumRegions> got{};
    for (BRegion reg : r.region_by_b) ++got[static_cast<int>(reg)];
    r.partition_pass = true;
    for (auto [reg, want] : cards)
      if (got[static_cast<int>(reg)] != want) r.partition_pass = false;

    r.ident_pass = r.global_sum == r.global_sum_expected && r.fcase_pass &&
                   r.dichotomy_pass && r.s2_count == r.s2_expected &&
                   r.s2_prime_count == r.s2_expected && r.partition_pass;
    r.phase_seconds.emplace_back("identities", seconds_since(t0));
  }

  // auxiliary
  if (opt.families) {
    auto t0 = std::chrono::steady_clock::now();
    r.aux_ran = true;
    r.scard_pass = true;
    for (int m = 2; m <= 8; ++m)
      if (!verify_scard(m)) r.scard_pass = false;
    r.aprop_pass = true;
    for (int m = 2; m <= 8; ++m)
      if (!verify_aprop(m)) r.aprop_pass = false;
    r.families.push_back(cross_validate_table1(Family::INVERSE, 8));
    r.families.push_back(cross_validate_table1(Family::GOLD, 6, 2));
    r.families.push_back(cross_validate_table1(Family::INVERSE, 5));
    r.aux_pass = r.scard_pass && r.aprop_pass;
    for (const auto& f : r.families) r.aux_pass = r.aux_pass && f.pass;
    r.phase_seconds.emplace_back("auxiliary", seconds_since(t0));
  }

  r.pass = r.boom_pass && r.diff_pass && (!r.decomp_ran || r.decomp_pass) &&
           r.ident_pass && (!r.aux_ran || r.aux_pass);
  return r;
}

namespace {

const char* pf(bool b) { return b ? "PASS" : "FAIL"; }

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string allowed_str(const std::vector<long long>& allowed) {
  std::string s = "{";
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(allowed[i]);
  }
  return s + "}";
}

}  // namespace

std::string render_report(const VerificationReport& r, int mismatch_cap) {
  std::ostringstream o;
  o << "boomspec-verify-report v1\n";
  o << "n " << r.n << "\n";
  o << "k " << r.k << "\n";
  o << "modulus " << hex(r.modulus) << "\n";
  o << "exponent " << r.exponent << "\n";

  if (r.boom_ran) {
    o << "\n[boomerang]\n";
    for (int i = 0; i < kNumRegions; ++i) {
      const auto& st = r.boom_regions[i];
      o << "region " << region_name(static_cast<BRegion>(i)) << " count "
        << st.count << " expected " << st.expected << " mismatches "
        << st.mismatches << "\n";
    }
    int shown = 0;
    for (const auto& mm : r.boom_mismatches) {
      if (shown == mismatch_cap) {
        o << "mismatches-suppressed "
          << (r.boom_mismatches.size() - static_cast<std::size_t>(shown)) << "\n";
        break;
      }
      o << "mismatch b " << hex(mm.b) << " region " << region_name(mm.region)
        << " brute " << mm.brute << " predicted " << mm.predicted << "\n";
      ++shown;
    }
    o << "uniformity " << r.uniformity << " expected " << r.uniformity_expected
      << "\n";
    o << "result " << pf(r.boom_pass) << "\n";
  }

  if (r.diff_ran) {
    o << "\n[differential]\n";
    o << "spectrum";
    for (auto [v, c] : r.diff_spectrum_all.counts) o << " " << v << ":" << c;
    o << "\n";
    o << "sum " << r.diff_sum << " expected " << (1ll << r.k) << "\n";
    o << "mismatches " << r.diff_mismatch_count << "\n";
    o << "result " << pf(r.diff_pass) << "\n";
  }

  o << "\n[decomposition]\n";
  if (!r.decomp_ran) {
    o << "skipped (exhaustive beta-tilde sweep runs at n <= 2)\n";
    o << "result SKIP\n";
  } else {
    o << "checked " << r.decomp_checked << "\n";
    o << "beta-sum-mismatches " << r.decomp_beta_mismatches << "\n";
    o << "c1-mismatches " << r.c1_mismatches << "\n";
    o << "s2-mismatches " << r.s2_mismatches << "\n";
    o << "mu-mismatches " << r.mu_mismatches << "\n";
    o << "mu-sum-vanishes-on-trace-nonzero " << pf(r.mu_vanishes_pass) << "\n";
    o << "outside-sum " << r.outside_sum << " expected " << r.outside_expected
      << "\n";
    o << "result " << pf(r.decomp_pass) << "\n";
  }

  if (r.ident_ran) {
    o << "\n[identities]\n";
    o << "global-sum " << r.global_sum << " expected " << r.global_sum_expected
      << "\n";
    o << "derivative-one-level-set " << pf(r.fcase_pass) << "\n";
    o << "witness-dichotomy " << pf(r.dichotomy_pass) << "\n";
    o << "s2-count " << r.s2_count << " expected " << r.s2_expected << "\n";
    o << "s2-prime-count " << r.s2_prime_count << " expected " << r.s2_expected
      << "\n";
    o << "partition " << pf(r.partition_pass) << "\n";
    o << "result " << pf(r.ident_pass) << "\n";
  }

  if (r.aux_ran) {
    o << "\n[auxiliary]\n";
    o << "trace-cells m=2..8 " << pf(r.scard_pass) << "\n";
    o << "two-representations m=2..8 " << pf(r.aprop_pass) << "\n";
    for (const auto& f : r.families) {
      o << "family " << f.label << " k=" << f.k;
      if (f.label == "gold") o << " s=" << f.param;
      o << " uniformity " << f.uniformity << " allowed " << allowed_str(f.allowed)
        << " " << pf(f.pass) << "\n";
    }
    o << "result " << pf(r.aux_pass) << "\n";
  }

  o << "\noverall " << pf(r.pass) << "\n";
  return o.str();
}

std::string render_verify_csv(const VerificationReport& r) {
  std::ostringstream o;
  o << "b_hex,region,brute,predicted,match\n";
  for (std::size_t b = 0; b < r.brute_row.size(); ++b) {
    const bool match = r.brute_row[b] == r.predicted_row[b];
    o << hex(b) << "," << region_name(r.region_by_b[b]) << "," << r.brute_row[b]
      << "," << r.predicted_row[b] << "," << (match ? 1 : 0) << "\n";
  }
  return o.str();
}

std::vector<CsvRow> parse_verify_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != "b_hex,region,brute,predicted,match")
    throw std::invalid_argument("verify csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    CsvRow row;
    std::string bhex;
    int match;
    if (!(ls >> bhex >> row.region >> row.brute >> row.predicted >> match))
      throw std::invalid_argument("verify csv: bad row: " + line);
    row.b = static_cast<Elt>(std::stoul(bhex, nullptr, 16));
    row.match = match != 0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace boomspec
