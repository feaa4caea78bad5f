#pragma once

// Elementary number theory on 64-bit integers.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cacforge {

struct PrimePower {
  uint64_t prime;
  uint32_t exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  uint64_t n = 1;
  std::vector<PrimePower> factors;  // ascending by prime

  std::vector<uint64_t> primes() const;
  bool operator==(const Factorization&) const = default;
};

// Modular helpers; all intermediate products go through unsigned __int128.
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);
uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m);
// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
uint64_t inv_mod(uint64_t a, uint64_t m);
// Least nonnegative residue of a (possibly negative) modulo m.
uint64_t reduce_mod(int64_t a, uint64_t m);

// Deterministic for all 64-bit inputs.
bool is_prime(uint64_t n);
uint64_t next_prime(uint64_t n);  // smallest prime > n

Factorization factorize(uint64_t n);
std::vector<uint64_t> divisors(uint64_t n);  // ascending
std::vector<uint64_t> divisors(const Factorization& f);

uint64_t euler_phi(uint64_t n);
uint64_t euler_phi(const Factorization& f);
int moebius(uint64_t n);
unsigned omega(uint64_t n);

// If n = p^k with p prime and k >= 1, returns (p, k).
std::optional<std::pair<uint64_t, unsigned>> prime_power(uint64_t n);

// Least k >= 1 with a^k = 1 (mod m). Requires m >= 2 and gcd(a, m) = 1.
uint64_t multiplicative_order(int64_t a, uint64_t m);
// Same, with the factorization of the group order phi(m) supplied.
uint64_t multiplicative_order(uint64_t a, uint64_t m, const Factorization& group_order);

// g is a primitive root mod the prime p, given the factorization of p-1.
bool is_primitive_root(uint64_t g, uint64_t p, const Factorization& p_minus_1);
uint64_t smallest_primitive_root(uint64_t p);
uint64_t smallest_primitive_root(uint64_t p, const Factorization& p_minus_1);

// Square root of a modulo an odd prime p (Tonelli-Shanks), if a is a square.
std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t p);

// Exponent e in [0, p-1) with g^e = a (mod p), g a primitive root.
// Pohlig-Hellman over the supplied factorization of p-1, baby-step giant-step per prime.
uint64_t discrete_log(uint64_t a, uint64_t g, uint64_t p, const Factorization& p_minus_1);

// Ramanujan's sum c_n(m) by the closed form mu(n/(n,m)) * phi(n) / phi(n/(n,m)).
int64_t ramanujan_sum(uint64_t n, int64_t m);

// Independent evaluation: the complex sum over t coprime to n of zeta_n^{mt},
// rounded after checking it is within 1e-6 of an integer with vanishing
// imaginary part, cross-checked against sum_{d | (n,m)} d * mu(n/d).
// Throws VerificationError if either check fails.
int64_t ramanujan_sum_oracle(uint64_t n, int64_t m);

// Divisor-sum route alone: sum over d | gcd(n, m) of d * mu(n/d).
int64_t ramanujan_sum_divisor(uint64_t n, int64_t m);

// |S'(d, t)|: pairs (j, k) in {1..ell-1}^2 with 2j + k = td (mod ell) and j + k != ell,
// counted by enumeration. Requires ell >= 3, d | ell, 1 <= t <= ell/d, gcd(t, ell/d) = 1.
uint64_t count_s_prime(uint64_t ell, uint64_t d, uint64_t t);

// Closed form |I| - 2 + 2*floor(d/ell) - (-1)^d * lambda with lambda = (1 + (-1)^ell)/2.
int64_t s_prime_closed_form(uint64_t ell, uint64_t d);

}  // namespace cacforge
