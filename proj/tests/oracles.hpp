#pragma once

// Slow, independent reference implementations used to check the library.
// Nothing here calls into cacforge beyond plain data types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<uint64_t, unsigned>> factor(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) n /= d, ++e;
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline uint64_t phi(uint64_t n) {
  uint64_t c = 0;
  for (uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

// By the defining recursion: sum over d | n of mu(d) is [n = 1].
inline int mu(uint64_t n) {
  if (n == 1) return 1;
  int s = 0;
  for (uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) s += mu(d);
  }
  return -s;
}

inline uint64_t order(uint64_t a, uint64_t m) {
  uint64_t x = a % m, k = 1;
  while (x != 1) x = x * a % m, ++k;
  return k;
}

inline int64_t ramanujan(uint64_t n, int64_t m) {
  std::complex<double> s = 0;
  for (uint64_t t = 1; t <= n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    const double ang = 2 * std::numbers::pi * static_cast<double>((static_cast<__int128>(m) * t) % static_cast<__int128>(n)) / n;
    s += std::polar(1.0, ang);
  }
  return std::llround(s.real());
}

// F_{p^k} as polynomials mod a monic modulus, schoolbook arithmetic, no tables.
// Elements use the same integer encoding as the library: sum c_i p^i.
class PolyField {
 public:
  PolyField(uint64_t p, std::vector<uint64_t> modulus) : p_(p), mod_(std::move(modulus)), k_(mod_.size() - 1) {
    q_ = 1;
    for (size_t i = 0; i < k_; ++i) q_ *= p_;
  }
  uint64_t q() const { return q_; }
  uint64_t p() const { return p_; }

  std::vector<uint64_t> decode(uint64_t c) const {
    std::vector<uint64_t> v(k_);
    for (size_t i = 0; i < k_; ++i) v[i] = c % p_, c /= p_;
    return v;
  }
  uint64_t encode(const std::vector<uint64_t>& v) const {
    uint64_t c = 0;
    for (size_t i = k_; i-- > 0;) c = c * p_ + v[i];
    return c;
  }
  uint64_t add(uint64_t a, uint64_t b) const {
    auto x = decode(a), y = decode(b);
    for (size_t i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }
  uint64_t neg(uint64_t a) const {
    auto x = decode(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return encode(x);
  }
  uint64_t mul(uint64_t a, uint64_t b) const {
    const auto x = decode(a), y = decode(b);
    std::vector<uint64_t> r(2 * k_, 0);
    for (size_t i = 0; i < k_; ++i) {
      for (size_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    }
    for (size_t d = 2 * k_ - 1; d >= k_; --d) {
      const uint64_t c = r[d];
      if (c == 0) continue;
      for (size_t i = 0; i <= k_; ++i) r[d - k_ + i] = (r[d - k_ + i] + (p_ - c) * mod_[i]) % p_;
    }
    r.resize(k_);
    return encode(r);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  }
  uint64_t order(uint64_t a) const {
    uint64_t x = a, k = 1;
    while (x != 1) x = mul(x, a), ++k;
    return k;
  }

  // Affine solutions of g^2 x^ell + g y^ell + 1 = 0 by trying every pair.
  uint64_t count_affine(uint64_t g, uint64_t ell) const {
    std::vector<uint64_t> pw(q_);
    for (uint64_t v = 0; v < q_; ++v) pw[v] = v == 0 ? 0 : pow(v, ell);
    const uint64_t g2 = mul(g, g);
    uint64_t n = 0;
    for (uint64_t x = 0; x < q_; ++x) {
      const uint64_t a = add(mul(g2, pw[x]), 1);
      for (uint64_t y = 0; y < q_; ++y) n += add(a, mul(g, pw[y])) == 0;
    }
    return n;
  }

 private:
  uint64_t p_;
  std::vector<uint64_t> mod_;
  size_t k_;
  uint64_t q_ = 1;
};

}  // namespace oracle
