#pragma once

// Prime-range verification of the generator conjecture for
// g^2 X^ell0 + g Y^ell0 + 1 = 0, the sets P(ell), and Fibonacci primitive roots.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cacforge/diagonal.hpp"

namespace cacforge {

enum class Verdict { holds, vacuous, covered_by_bound, failed };

const char* to_string(Verdict v);

// Above this, primes covered by the bound b(ell0) are marked covered_by_bound
// without a search; at or below it they are searched like any other prime.
inline constexpr uint64_t kBoundSearchLimit = 1'000'000;

struct ScanRecord {
  uint64_t p = 0;
  uint64_t ell0 = 0;
  Verdict verdict = Verdict::failed;
  std::optional<PrimeWitness> witness;
  double ms = 0.0;
};

// p >= b(ell) without overflow, for any ell.
bool at_least_bound(uint64_t p, uint64_t ell);

// Requires an odd prime p.
ScanRecord verify_conjecture(uint64_t p);

// One record per odd prime in [lo, hi], ascending; with `ell_filter`, only
// primes whose ell0 equals it. Work is split into blocks run on `jobs` threads.
std::vector<ScanRecord> scan_range(uint64_t lo, uint64_t hi, std::optional<uint64_t> ell_filter = {},
                                   unsigned jobs = 1);

std::string scan_csv(const std::vector<ScanRecord>& records, bool timing = true);

struct PEllSet {
  uint64_t ell = 0;
  int64_t bound = 0;
  uint64_t lo = 0;
  std::vector<uint64_t> primes;
};

// Primes lo < p < b(ell) with [F_p^x : <-1, 2>] = ell. Requires ell >= 3.
PEllSet p_ell_set(uint64_t ell, uint64_t lo, unsigned jobs = 1);

// Primitive roots g mod p with g^2 = g + 1, ascending. Requires an odd prime p.
std::vector<uint64_t> fibonacci_primitive_roots(uint64_t p);
// Primes p <= limit with a Fibonacci primitive root.
std::vector<uint64_t> fib_prime_sequence(uint64_t limit);

}  // namespace cacforge
