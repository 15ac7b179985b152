#include "boomspec/field.hpp"

#include <array>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace boomspec {

int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t poly_mul2(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint64_t poly_mod2(std::uint64_t a, std::uint64_t m) {
  int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; --d)
    if (a >> d & 1) a ^= m << (d - dm);
  return a;
}

bool is_irreducible(std::uint64_t m) {
  int d = poly_degree(m);
  if (d < 1) return false;
  if (d == 1) return true;
  if (!(m & 1)) return false;  // X divides
  for (std::uint64_t f = 2; poly_degree(f) <= d / 2; ++f)
    if (poly_mod2(m, f) == 0) return false;
  return true;
}

std::uint32_t default_modulus(int k) {
  if (k < kMinDegree || k > kMaxDegree)
    throw std::invalid_argument("default_modulus: degree out of range 2..24");
  static std::array<std::uint32_t, kMaxDegree + 1> cache{};
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (!cache[k]) {
    for (std::uint64_t m = 1ull << k;; ++m)
      if (is_irreducible(m)) {
        cache[k] = static_cast<std::uint32_t>(m);
        break;
      }
  }
  return cache[k];
}

FieldSpec make_spec(int k, std::uint32_t modulus) {
  if (k < kMinDegree || k > kMaxDegree)
    throw std::invalid_argument("field degree must be in 2..24");
  if (modulus == 0) modulus = default_modulus(k);
  if (poly_degree(modulus) != k)
    throw std::invalid_argument("modulus degree does not match field degree");
  if (!is_irreducible(modulus))
    throw std::invalid_argument("modulus is reducible");
  FieldSpec spec;
  spec.k = k;
  spec.modulus = modulus;
  return spec;
}

Elt gf_add(const FieldSpec&, Elt x, Elt y) { return x ^ y; }

Elt gf_mul_schoolbook(const FieldSpec& spec, Elt x, Elt y) {
  Elt r = 0;
  const Elt top = 1u << spec.k;
  while (y) {
    if (y & 1) r ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= spec.modulus;
  }
  return r;
}

static std::uint32_t elt_order(const FieldSpec& spec, Elt x) {
  Elt y = x;
  std::uint32_t n = 1;
  while (y != 1) {
    y = gf_mul_schoolbook(spec, y, x);
    ++n;
  }
  return n;
}

void build_tables(FieldSpec& spec) {
  if (spec.has_tables()) return;
  const std::uint32_t N = spec.order();
  Elt g = 2;
  while (elt_order(spec, g) != N) ++g;
  spec.generator = g;
  spec.exp.assign(N, 0);
  spec.log.assign(spec.Q(), -1);
  Elt x = 1;
  for (std::uint32_t i = 0; i < N; ++i) {
    spec.exp[i] = x;
    spec.log[x] = static_cast<std::int32_t>(i);
    x = gf_mul_schoolbook(spec, x, g);
  }
  if (x != 1) throw std::logic_error("generator walk did not close");
}

FieldSpec make_field(int k, std::uint32_t modulus) {
  FieldSpec spec = make_spec(k, modulus);
  build_tables(spec);
  return spec;
}

Elt gf_mul(const FieldSpec& spec, Elt x, Elt y) {
  if (!spec.has_tables()) return gf_mul_schoolbook(spec, x, y);
  if (x == 0 || y == 0) return 0;
  std::uint32_t e = spec.log[x] + spec.log[y];
  const std::uint32_t N = spec.order();
  if (e >= N) e -= N;
  return spec.exp[e];
}

Elt gf_inv(const FieldSpec& spec, Elt x) {
  if (x == 0) throw std::domain_error("gf_inv: zero has no inverse");
  if (!spec.has_tables()) return gf_pow(spec, x, spec.order() - 1);
  const std::uint32_t N = spec.order();
  std::uint32_t e = (N - spec.log[x]) % N;
  return spec.exp[e];
}

Elt gf_div(const FieldSpec& spec, Elt x, Elt y) {
  return gf_mul(spec, x, gf_inv(spec, y));
}

Elt gf_pow(const FieldSpec& spec, Elt x, std::uint64_t e) {
  if (x == 0) return e == 0 ? 1 : 0;  // 0^0 = 1 by convention
  const std::uint32_t N = spec.order();
  std::uint64_t r = e % N;
  if (spec.has_tables())
    return spec.exp[static_cast<std::uint32_t>(r * spec.log[x] % N)];
  Elt acc = 1;
  Elt base = x;
  while (r) {
    if (r & 1) acc = gf_mul_schoolbook(spec, acc, base);
    base = gf_mul_schoolbook(spec, base, base);
    r >>= 1;
  }
  return acc;
}

static void require_subfield_degree(const FieldSpec& spec, int l) {
  if (l < 1 || spec.k % l != 0)
    throw std::domain_error("subfield degree must divide the field degree");
}

Elt trace(const FieldSpec& spec, int l, Elt x) {
  require_subfield_degree(spec, l);
  Elt t = 0;
  Elt y = x;
  for (int i = 0; i < spec.k / l; ++i) {
    t ^= y;
    for (int j = 0; j < l; ++j) y = gf_mul(spec, y, y);
  }
  return t;
}

Elt norm(const FieldSpec& spec, int l, Elt x) {
  require_subfield_degree(spec, l);
  if (x == 0) return 0;
  Elt p = 1;
  Elt y = x;
  for (int i = 0; i < spec.k / l; ++i) {
    p = gf_mul(spec, p, y);
    for (int j = 0; j < l; ++j) y = gf_mul(spec, y, y);
  }
  return p;
}

bool in_subfield(const FieldSpec& spec, int l, Elt x) {
  require_subfield_degree(spec, l);
  Elt y = x;
  for (int j = 0; j < l; ++j) y = gf_mul(spec, y, y);
  return y == x;
}

Elt partial_trace(const FieldSpec& spec, int m, Elt x) {
  if (m < 1) throw std::domain_error("partial_trace: need m >= 1");
  Elt t = 0;
  Elt y = x;
  for (int i = 0; i < m; ++i) {
    t ^= y;
    y = gf_mul(spec, y, y);
  }
  return t;
}

std::map<int, std::uint32_t> parse_field_config(std::istream& in) {
  std::map<int, std::uint32_t> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("field config line " + std::to_string(lineno) +
                                  ": expected k=0xHEX");
    int k;
    std::uint32_t mod;
    try {
      k = std::stoi(line.substr(0, eq));
      mod = static_cast<std::uint32_t>(std::stoul(line.substr(eq + 1), nullptr, 16));
    } catch (const std::exception&) {
      throw std::invalid_argument("field config line " + std::to_string(lineno) +
                                  ": malformed entry");
    }
    make_spec(k, mod);  // validates degree + irreducibility
    out[k] = mod;
  }
  return out;
}

std::map<int, std::uint32_t> load_field_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field config: " + path);
  return parse_field_config(in);
}

}  // namespace boomspec
