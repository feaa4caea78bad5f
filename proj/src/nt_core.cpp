#include "cacforge/nt_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

#include "cacforge/error.hpp"

namespace cacforge {

namespace {

using u128 = unsigned __int128;

constexpr uint64_t kTrialLimit = 1'000'000;

uint64_t isqrt(uint64_t n) {
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool miller_rabin_round(uint64_t n, uint64_t a, uint64_t d, unsigned s) {
  uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; n must be composite and odd.
uint64_t pollard_rho(uint64_t n) {
  for (uint64_t c = 1;; ++c) {
    uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const uint64_t m = 128;
    uint64_t r = 1;
    auto f = [&](uint64_t v) { return add_mod(mul_mod(v, v, n), c, n); };
    do {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      uint64_t k = 0;
      do {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// Baby-step giant-step for x in [0, order) with base^x = target (mod p).
uint64_t bsgs(uint64_t base, uint64_t target, uint64_t order, uint64_t p) {
  const uint64_t m = isqrt(order) + 1;
  std::unordered_map<uint64_t, uint64_t> table;
  table.reserve(m * 2);
  uint64_t cur = 1;
  for (uint64_t j = 0; j < m; ++j) {
    table.emplace(cur, j);
    cur = mul_mod(cur, base, p);
  }
  const uint64_t giant = inv_mod(pow_mod(base, m, p), p);
  uint64_t gamma = target;
  for (uint64_t i = 0; i <= m; ++i) {
    if (auto it = table.find(gamma); it != table.end()) {
      uint64_t x = i * m + it->second;
      if (x < order) return x;
    }
    gamma = mul_mod(gamma, giant, p);
  }
  throw DomainError("discrete_log: element not in the generated subgroup");
}

}  // namespace

std::vector<uint64_t> Factorization::primes() const {
  std::vector<uint64_t> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<u128>(a) + b) % m);
}

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : m - (b - a);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  if (m == 0) throw DomainError("inv_mod: modulus 0");
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) {
    if (m == 1) return 0;
    throw DomainError("inv_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  if (t < 0) t += m;
  return static_cast<uint64_t>(t);
}

uint64_t reduce_mod(int64_t a, uint64_t m) {
  if (a >= 0) return static_cast<uint64_t>(a) % m;
  // -(a+1) avoids overflow at INT64_MIN
  uint64_t neg = static_cast<uint64_t>(-(a + 1)) % m;
  return m - 1 - neg;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3e24.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

uint64_t next_prime(uint64_t n) {
  if (n < 2) return 2;
  uint64_t c = n + 1;
  if (c > 2 && c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

Factorization factorize(uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  Factorization f;
  f.n = n;
  uint64_t rest = n;
  auto push = [&](uint64_t p) {
    uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  };
  push(2);
  for (uint64_t p = 3; p <= kTrialLimit && p * p <= rest; p += 2) push(p);
  if (rest > 1) {
    if (rest < kTrialLimit * kTrialLimit || is_prime(rest)) {
      f.factors.push_back({rest, 1});
    } else {
      std::vector<uint64_t> ps;
      factor_into(rest, ps);
      std::sort(ps.begin(), ps.end());
      for (uint64_t p : ps) {
        if (!f.factors.empty() && f.factors.back().prime == p) {
          ++f.factors.back().exponent;
        } else {
          f.factors.push_back({p, 1});
        }
      }
    }
  }
  return f;
}

std::vector<uint64_t> divisors(const Factorization& f) {
  std::vector<uint64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const size_t base = out.size();
    uint64_t pk = 1;
    for (uint32_t k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> divisors(uint64_t n) { return divisors(factorize(n)); }

uint64_t euler_phi(const Factorization& f) {
  uint64_t phi = f.n;
  for (const auto& [p, e] : f.factors) phi = phi / p * (p - 1);
  return phi;
}

uint64_t euler_phi(uint64_t n) { return euler_phi(factorize(n)); }

int moebius(uint64_t n) {
  const auto f = factorize(n);
  for (const auto& pe : f.factors) {
    if (pe.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

unsigned omega(uint64_t n) { return static_cast<unsigned>(factorize(n).factors.size()); }

std::optional<std::pair<uint64_t, unsigned>> prime_power(uint64_t n) {
  if (n < 2) return std::nullopt;
  const auto f = factorize(n);
  if (f.factors.size() != 1) return std::nullopt;
  return std::make_pair(f.factors[0].prime, static_cast<unsigned>(f.factors[0].exponent));
}

uint64_t multiplicative_order(uint64_t a, uint64_t m, const Factorization& group_order) {
  a %= m;
  uint64_t order = group_order.n;
  if (pow_mod(a, order, m) != 1) {
    throw DomainError("multiplicative_order: supplied group order is not a multiple of the element order");
  }
  for (const auto& [p, e] : group_order.factors) {
    for (uint32_t i = 0; i < e && order % p == 0; ++i) {
      if (pow_mod(a, order / p, m) != 1) break;
      order /= p;
    }
  }
  return order;
}

uint64_t multiplicative_order(int64_t a, uint64_t m) {
  if (m < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  const uint64_t r = reduce_mod(a, m);
  if (std::gcd(r, m) != 1) {
    throw DomainError("multiplicative_order: gcd(" + std::to_string(a) + ", " + std::to_string(m) + ") != 1");
  }
  return multiplicative_order(r, m, factorize(euler_phi(m)));
}

bool is_primitive_root(uint64_t g, uint64_t p, const Factorization& p_minus_1) {
  g %= p;
  if (g == 0) return false;
  if (p == 2) return g == 1;
  for (const auto& pe : p_minus_1.factors) {
    if (pow_mod(g, (p - 1) / pe.prime, p) == 1) return false;
  }
  return true;
}

uint64_t smallest_primitive_root(uint64_t p, const Factorization& p_minus_1) {
  if (p == 2) return 1;
  for (uint64_t g = 2; g < p; ++g) {
    if (is_primitive_root(g, p, p_minus_1)) return g;
  }
  throw DomainError("smallest_primitive_root: " + std::to_string(p) + " is not prime");
}

uint64_t smallest_primitive_root(uint64_t p) {
  if (!is_prime(p)) throw DomainError("smallest_primitive_root: " + std::to_string(p) + " is not prime");
  return smallest_primitive_root(p, factorize(p - 1));
}

std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t c = pow_mod(z, q, p);
  uint64_t x = pow_mod(a, (q + 1) / 2, p);
  uint64_t t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    uint64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    uint64_t b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    x = mul_mod(x, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return x;
}

uint64_t discrete_log(uint64_t a, uint64_t g, uint64_t p, const Factorization& p_minus_1) {
  a %= p;
  if (a == 0) throw DomainError("discrete_log: zero has no logarithm");
  const uint64_t n = p - 1;
  u128 x = 0, modulus = 1;
  for (const auto& [r, e] : p_minus_1.factors) {
    uint64_t re = 1;
    for (uint32_t i = 0; i < e; ++i) re *= r;
    const uint64_t gamma = pow_mod(g, n / r, p);
    const uint64_t g_inv = inv_mod(g, p);
    uint64_t xr = 0, rk = 1;
    for (uint32_t k = 0; k < e; ++k) {
      const uint64_t shifted = mul_mod(a, pow_mod(g_inv, xr, p), p);
      const uint64_t h = pow_mod(shifted, n / (rk * r), p);
      xr += bsgs(gamma, h, r, p) * rk;
      rk *= r;
    }
    // CRT merge x (mod modulus) with xr (mod re)
    const uint64_t mod64 = static_cast<uint64_t>(modulus);
    const uint64_t x64 = static_cast<uint64_t>(x);
    const uint64_t diff = sub_mod(xr % re, x64 % re, re);
    const uint64_t k = mul_mod(diff, inv_mod(mod64 % re, re), re);
    x = x + static_cast<u128>(mod64) * k;
    modulus *= re;
  }
  return static_cast<uint64_t>(x % n);
}

int64_t ramanujan_sum(uint64_t n, int64_t m) {
  if (n == 0) throw DomainError("ramanujan_sum: n must be positive");
  const uint64_t g = std::gcd(n, reduce_mod(m, n));  // gcd(n, 0) = n
  const uint64_t d = n / g;
  const int mu = moebius(d);
  if (mu == 0) return 0;
  return mu * static_cast<int64_t>(euler_phi(n) / euler_phi(d));
}

int64_t ramanujan_sum_divisor(uint64_t n, int64_t m) {
  if (n == 0) throw DomainError("ramanujan_sum_divisor: n must be positive");
  const uint64_t g = std::gcd(n, reduce_mod(m, n));
  int64_t total = 0;
  for (uint64_t d : divisors(g)) total += static_cast<int64_t>(d) * moebius(n / d);
  return total;
}

int64_t ramanujan_sum_oracle(uint64_t n, int64_t m) {
  if (n == 0) throw DomainError("ramanujan_sum_oracle: n must be positive");
  constexpr double kTol = 1e-6;
  const uint64_t mr = reduce_mod(m, n);
  std::complex<double> sum = 0.0;
  for (uint64_t t = 1; t <= n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    const uint64_t idx = mul_mod(mr, t, n);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(n);
    sum += std::polar(1.0, angle);
  }
  const double rounded = std::round(sum.real());
  if (std::abs(sum.imag()) >= kTol || std::abs(sum.real() - rounded) >= kTol) {
    throw VerificationError("ramanujan_sum_oracle(" + std::to_string(n) + ", " + std::to_string(m) +
                            "): complex sum is not integral");
  }
  const auto value = static_cast<int64_t>(rounded);
  if (value != ramanujan_sum_divisor(n, m)) {
    throw VerificationError("ramanujan_sum_oracle(" + std::to_string(n) + ", " + std::to_string(m) +
                            "): complex sum disagrees with the divisor-sum identity");
  }
  return value;
}

uint64_t count_s_prime(uint64_t ell, uint64_t d, uint64_t t) {
  if (ell < 3) throw DomainError("count_s_prime: ell must be >= 3");
  if (d == 0 || ell % d != 0) throw DomainError("count_s_prime: d must divide ell");
  const uint64_t cofactor = ell / d;
  if (t < 1 || t > cofactor || std::gcd(t, cofactor) != 1) {
    throw DomainError("count_s_prime: need 1 <= t <= ell/d with gcd(t, ell/d) = 1");
  }
  const uint64_t target = (t * d) % ell;
  uint64_t count = 0;
  for (uint64_t j = 1; j < ell; ++j) {
    for (uint64_t k = 1; k < ell; ++k) {
      if ((2 * j + k) % ell == target && j + k != ell) ++count;
    }
  }
  return count;
}

int64_t s_prime_closed_form(uint64_t ell, uint64_t d) {
  const auto size_i = static_cast<int64_t>(ell) - 1;
  const int64_t lambda = ell % 2 == 0 ? 1 : 0;
  const int64_t sign = d % 2 == 0 ? 1 : -1;
  return size_i - 2 + 2 * static_cast<int64_t>(d / ell) - sign * lambda;
}

}  // namespace cacforge
