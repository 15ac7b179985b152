// boomspec: differential/boomerang spectra of S-boxes over GF(2^k), the
// closed-form row predictor for X^(q^3+q^2+q-1) over GF(q^4), and the
// full-field brute-force verifier.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 invalid input, 3 resource gate.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "boomspec/closedform.hpp"
#include "boomspec/field.hpp"
#include "boomspec/spectra.hpp"
#include "boomspec/structure.hpp"
#include "boomspec/verify.hpp"

using namespace boomspec;

namespace {

int env_workers() {
  const char* v = std::getenv("BOOMSPEC_WORKERS");
  if (!v) return 0;
  try {
    int w = std::stoi(v);
    return w > 0 ? w : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::uint32_t parse_hex32(const std::string& s) {
  return static_cast<std::uint32_t>(std::stoul(s, nullptr, 16));
}

std::string hexstr(std::uint64_t v) {
  std::ostringstream o;
  o << "0x" << std::hex << v;
  return o.str();
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

struct FieldArgs {
  int n = 0;
  int k = 0;
  std::uint64_t exponent = 0;
  bool have_exponent = false;
  std::string modulus_hex;
  std::string table_file;
  std::string field_config;
};

void add_field_flags(CLI::App* cmd, FieldArgs& fa, bool with_table) {
  cmd->add_option("--n", fa.n, "main-map parameter: field GF(2^{4n}), exponent q^3+q^2+q-1");
  cmd->add_option("--k", fa.k, "field degree (2..24)");
  auto* e = cmd->add_option("--exponent", fa.exponent, "power-map exponent d for x^d");
  e->each([&fa](const std::string&) { fa.have_exponent = true; });
  cmd->add_option("--modulus", fa.modulus_hex, "irreducible modulus, hex (e.g. 0x11b)");
  cmd->add_option("--field-config", fa.field_config,
                  "config file with `k=0xHEX` modulus lines");
  if (with_table)
    cmd->add_option("--table-file", fa.table_file,
                    "permutation as `x f(x)` hex lines (needs --k)");
}

std::uint32_t resolve_modulus(const FieldArgs& fa, int k) {
  if (!fa.modulus_hex.empty()) return parse_hex32(fa.modulus_hex);
  if (!fa.field_config.empty()) {
    auto cfg = load_field_config(fa.field_config);
    auto it = cfg.find(k);
    if (it != cfg.end()) return it->second;
  }
  return default_modulus(k);
}

// Exactly one of --n / --k(+--exponent) / --table-file.
PermTable resolve_perm(const FieldArgs& fa) {
  const bool has_n = fa.n > 0;
  const bool has_k = fa.k > 0;
  const bool has_table = !fa.table_file.empty();
  const int sources =
      (has_n ? 1 : 0) + (has_table ? 1 : 0) + (has_k && !has_table ? 1 : 0);
  if (sources != 1 || (has_n && fa.have_exponent))
    throw std::invalid_argument(
        "specify exactly one input: --n, or --k with --exponent, "
        "or --table-file with --k");
  if (!fa.table_file.empty()) {
    if (fa.k == 0) throw std::invalid_argument("--table-file requires --k");
    auto spec = std::make_shared<const FieldSpec>(make_field(fa.k, resolve_modulus(fa, fa.k)));
    std::ifstream in(fa.table_file);
    if (!in) throw std::invalid_argument("cannot open table file: " + fa.table_file);
    return load_perm_table(spec, in);
  }
  int k;
  std::uint64_t d;
  if (has_n) {
    k = 4 * fa.n;
    d = main_exponent(fa.n);
  } else {
    k = fa.k;
    if (!fa.have_exponent)
      throw std::invalid_argument("--k needs --exponent (or use --n for the main map)");
    d = fa.exponent;
  }
  auto spec = std::make_shared<const FieldSpec>(make_field(k, resolve_modulus(fa, k)));
  return build_power_perm(spec, d);
}

std::string spectrum_header(const PermTable& P, const FieldArgs& fa) {
  std::ostringstream o;
  o << "boomspec-spectrum v1\n";
  o << "k " << P.spec->k << "\n";
  o << "modulus " << hexstr(P.spec->modulus) << "\n";
  if (P.exponent) o << "exponent " << *P.exponent << "\n";
  else o << "table-file " << fa.table_file << "\n";
  o << "a 0x1\n";
  return o.str();
}

int cmd_spectrum(const FieldArgs& fa, int workers, const std::string& format,
                 const std::string& out_path) {
  PermTable P = resolve_perm(fa);
  auto row = boomerang_row(P, 1, workers);
  SpectrumMultiset ms;
  for (std::uint32_t b = 1; b < P.Q(); ++b) {
    ++ms.counts[row[b]];
    ++ms.total;
  }
  std::ostringstream o;
  if (format == "csv") {
    o << "b_hex,beta\n";
    for (std::uint32_t b = 0; b < P.Q(); ++b)
      o << hexstr(b) << "," << row[b] << "\n";
  } else if (format == "structured") {
    o << spectrum_header(P, fa);
    for (std::uint32_t b = 0; b < P.Q(); ++b)
      o << "row " << hexstr(b) << " " << row[b] << "\n";
    o << "multiset";
    for (auto [v, c] : ms.counts) o << " " << v << ":" << c;
    o << "\n";
  } else {
    o << spectrum_header(P, fa);
    o << "spectrum over b != 0 (value:count):";
    for (auto [v, c] : ms.counts) o << " " << v << ":" << c;
    o << "\n";
    o << "b = 0 row value: " << row[0] << " (excluded from uniformity)\n";
    long long uni = 0;
    for (std::uint32_t b = 1; b < P.Q(); ++b) uni = std::max(uni, row[b]);
    o << "uniformity: " << uni << "\n";
  }
  write_out(o.str(), out_path);
  return 0;
}

int cmd_classify(int n, const std::string& b_hex, const std::string& modulus_hex,
                 const std::string& field_config) {
  if (n < 1 || n > 4) throw std::invalid_argument("classify: --n must be 1..4");
  FieldArgs fa;
  fa.modulus_hex = modulus_hex;
  fa.field_config = field_config;
  FieldSpec spec = make_field(4 * n, resolve_modulus(fa, 4 * n));
  const std::uint64_t b64 = std::stoull(b_hex, nullptr, 16);
  if (b64 >= spec.Q()) throw std::invalid_argument("b exceeds the field size");
  const Elt b = static_cast<Elt>(b64);
  const BRegion reg = region_of(spec, n, b);
  std::cout << "b " << hexstr(b) << "\n";
  std::cout << "n " << n << " k " << spec.k << " modulus " << hexstr(spec.modulus)
            << "\n";
  std::cout << "region " << region_name(reg) << "\n";
  std::cout << "predicted-beta " << predicted_beta(n, reg) << "\n";
  std::cout << "predicted-diff-count " << predicted_diff_count(n, reg) << "\n";
  S2Witness w = s2_membership(spec, n, b);
  if (w.verdict != S2Verdict::NEITHER)
    std::cout << "witness A " << hexstr(w.A) << " trA " << hexstr(w.trA) << " U "
              << hexstr(w.U) << "\n";
  return 0;
}

int cmd_verify(int n, int workers, bool long_run, bool full_dump,
               const std::string& format, const std::string& out_path,
               const std::string& modulus_hex, const std::string& field_config) {
  if (n < 1 || n > 4) throw std::invalid_argument("verify: --n must be 1..4");
  if (n == 4 && !long_run) {
    std::cerr << "verify --n 4 sweeps GF(2^16): ~4.3e9 table lookups "
                 "(minutes of CPU). Re-run with --long to proceed.\n";
    return 3;
  }
  FieldArgs fa;
  fa.modulus_hex = modulus_hex;
  fa.field_config = field_config;
  VerifyOptions opt;
  opt.workers = workers;
  opt.modulus = resolve_modulus(fa, 4 * n);
  VerificationReport r = run_full_verify(n, opt);
  for (auto& [phase, secs] : r.phase_seconds) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << "# " << phase << " " << secs << "s\n";
    std::cerr << t.str();
  }
  const std::string text = format == "csv"
                               ? render_verify_csv(r)
                               : render_report(r, full_dump ? 1 << 30 : 100);
  write_out(text, out_path);
  return r.pass ? 0 : 1;
}

int cmd_bench(const FieldArgs& fa, int workers) {
  PermTable P = resolve_perm(fa);
  const std::uint32_t Q = P.Q();
  using clock = std::chrono::steady_clock;

  auto t0 = clock::now();
  auto row_s = boomerang_row_serial(P, 1);
  double serial = std::chrono::duration<double>(clock::now() - t0).count();

  t0 = clock::now();
  auto row_p = boomerang_row(P, 1, workers);
  double parallel = std::chrono::duration<double>(clock::now() - t0).count();
  if (row_s != row_p) {
    std::cerr << "serial and parallel rows disagree\n";
    return 1;
  }

  // single-entry throughput, O(Q) path vs O(Q log Q) pair-counting path
  const int reps = std::max(1, static_cast<int>(1u << 22) / static_cast<int>(Q));
  t0 = clock::now();
  long long sink = 0;
  for (int i = 0; i < reps; ++i) sink += bct_entry(P, 1, static_cast<Elt>(i % Q));
  double fast = std::chrono::duration<double>(clock::now() - t0).count();
  t0 = clock::now();
  for (int i = 0; i < reps; ++i)
    sink += bct_entry_system(P, 1, static_cast<Elt>(i % Q));
  double system = std::chrono::duration<double>(clock::now() - t0).count();

  std::cout << "bench k=" << P.spec->k << " Q=" << Q << " workers="
            << (workers > 0 ? std::to_string(workers) : std::string("auto"))
            << "\n";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(3);
  std::cout << "boomerang_row serial   " << serial << " s\n";
  std::cout << "boomerang_row parallel " << parallel << " s  (speedup "
            << (parallel > 0 ? serial / parallel : 0) << "x)\n";
  std::cout.precision(0);
  std::cout << "bct_entry        " << (fast > 0 ? reps / fast : 0)
            << " entries/s\n";
  std::cout << "bct_entry_system " << (system > 0 ? reps / system : 0)
            << " entries/s\n";
  if (sink == -1) std::cout << "";  // keep the loops alive
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-field boomerang/differential spectrum tool"};
  app.require_subcommand(1);

  FieldArgs sp_fa;
  int sp_workers = env_workers();
  std::string sp_format = "table", sp_out;
  auto* sp = app.add_subcommand("spectrum", "compute the beta(1,b) row and its multiset");
  add_field_flags(sp, sp_fa, true);
  sp->add_option("--workers", sp_workers, "worker threads (default: BOOMSPEC_WORKERS or auto)");
  sp->add_option("--format", sp_format, "table|csv|structured")
      ->check(CLI::IsMember({"table", "csv", "structured"}));
  sp->add_option("--out", sp_out, "write output to a file");

  int cl_n = 0;
  std::string cl_b, cl_modulus, cl_config;
  auto* cl = app.add_subcommand("classify", "classify b and print predictions + witness");
  cl->add_option("--n", cl_n, "main-map parameter")->required();
  cl->add_option("--modulus", cl_modulus, "irreducible modulus, hex");
  cl->add_option("--field-config", cl_config, "config file with `k=0xHEX` lines");
  cl->add_option("b", cl_b, "element of GF(2^{4n}), hex")->required();

  int vf_n = 2, vf_workers = env_workers();
  bool vf_long = false, vf_full = false;
  std::string vf_format = "structured", vf_out, vf_modulus, vf_config;
  auto* vf = app.add_subcommand("verify", "brute force vs closed form over the whole field");
  vf->add_option("--n", vf_n, "main-map parameter (default 2)");
  vf->add_option("--workers", vf_workers, "worker threads");
  vf->add_flag("--long", vf_long, "allow the n=4 sweep");
  vf->add_flag("--full-dump", vf_full, "do not cap mismatch listings");
  vf->add_option("--format", vf_format, "table|csv|structured")
      ->check(CLI::IsMember({"table", "csv", "structured"}));
  vf->add_option("--out", vf_out, "write report to a file");
  vf->add_option("--modulus", vf_modulus, "irreducible modulus, hex");
  vf->add_option("--field-config", vf_config, "config file with `k=0xHEX` lines");

  FieldArgs bn_fa;
  int bn_workers = env_workers();
  auto* bn = app.add_subcommand("bench", "serial vs parallel and O(Q) vs O(Q log Q) timings");
  add_field_flags(bn, bn_fa, true);
  bn->add_option("--workers", bn_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help/--version keep 0, bad usage is 2
  }

  try {
    const auto check_workers = [](CLI::App* cmd, int value) {
      if (cmd->parsed() && cmd->count("--workers") > 0 && value < 1)
        throw std::invalid_argument("--workers must be at least 1");
    };
    check_workers(sp, sp_workers);
    check_workers(vf, vf_workers);
    check_workers(bn, bn_workers);
    if (sp->parsed()) return cmd_spectrum(sp_fa, sp_workers, sp_format, sp_out);
    if (cl->parsed()) return cmd_classify(cl_n, cl_b, cl_modulus, cl_config);
    if (vf->parsed())
      return cmd_verify(vf_n, vf_workers, vf_long, vf_full, vf_format, vf_out,
                        vf_modulus, vf_config);
    if (bn->parsed()) return cmd_bench(bn_fa, bn_workers);
  } catch (const std::length_error& e) {
    std::cerr << "resource gate: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
