#include "cacforge/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "cacforge/error.hpp"

namespace cacforge {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::vacuous: return "vacuous";
    case Verdict::covered_by_bound: return "covered_by_bound";
    case Verdict::failed: return "failed";
  }
  return "failed";
}

bool at_least_bound(uint64_t p, uint64_t ell) {
  // b(ell) >= (ell - 2)^2 - 2 > 2^64 once ell exceeds 2^33
  if (ell > (1ULL << 33)) return false;
  const unsigned w = omega(ell);
  const __int128 delta = ell % 4 == 0 ? 1 : 0;
  const __int128 inner = (static_cast<__int128>(1) << w) * (static_cast<__int128>(ell) - 3 - delta) + 2;
  const __int128 b = inner * inner - 2;
  return static_cast<__int128>(p) >= b;
}

ScanRecord verify_conjecture(uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("verify_conjecture: p must be an odd prime");
  const auto start = std::chrono::steady_clock::now();
  ScanRecord rec;
  rec.p = p;
  const auto fac = factorize(p - 1);
  rec.ell0 = h_index(p, fac).ell0;
  const bool covered = at_least_bound(p, rec.ell0);
  if (rec.ell0 < 3) {
    rec.verdict = Verdict::vacuous;
  } else if (covered && p > kBoundSearchLimit) {
    rec.verdict = Verdict::covered_by_bound;
  } else {
    rec.witness = find_solvable_generator_prime(p, rec.ell0, true, fac);
    rec.verdict = rec.witness ? Verdict::holds : Verdict::failed;
  }
  rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

namespace {

// Runs block_fn(b) for b in [0, blocks) on `jobs` threads and concatenates in block order.
template <typename T, typename Fn>
std::vector<T> run_blocks(uint64_t blocks, unsigned jobs, Fn block_fn) {
  std::vector<std::vector<T>> parts(blocks);
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (uint64_t b = next++; b < blocks; b = next++) parts[b] = block_fn(b);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<uint64_t>(blocks, 1024))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

// Candidates lo <= c <= hi with c = residue (mod step).
struct Progression {
  uint64_t first = 0;
  uint64_t step = 0;
  uint64_t count = 0;
};

Progression progression(uint64_t lo, uint64_t hi, uint64_t step, uint64_t residue) {
  Progression pr{0, step, 0};
  if (lo > hi) return pr;
  const uint64_t r = lo % step;
  uint64_t first = lo - r + residue % step;
  if (first < lo) {
    if (first > UINT64_MAX - step) return pr;
    first += step;
  }
  if (first > hi) return pr;
  pr.first = first;
  pr.count = (hi - first) / step + 1;
  return pr;
}

constexpr uint64_t kBlock = 4096;

}  // namespace

std::vector<ScanRecord> scan_range(uint64_t lo, uint64_t hi, std::optional<uint64_t> ell_filter, unsigned jobs) {
  lo = std::max<uint64_t>(lo, 3);
  if (ell_filter && *ell_filter == 0) throw DomainError("scan_range: ell filter must be positive");
  if (ell_filter && *ell_filter > (UINT64_MAX >> 2)) return {};
  const uint64_t step = ell_filter ? 2 * *ell_filter : 2;
  const Progression pr = progression(lo, hi, step, 1);
  const uint64_t blocks = (pr.count + kBlock - 1) / kBlock;
  return run_blocks<ScanRecord>(blocks, jobs, [&](uint64_t b) {
    std::vector<ScanRecord> out;
    const uint64_t end = std::min(pr.count, (b + 1) * kBlock);
    for (uint64_t i = b * kBlock; i < end; ++i) {
      const uint64_t c = pr.first + i * pr.step;
      if (c < 3 || !is_prime(c)) continue;
      if (ell_filter && h_index(c).ell0 != *ell_filter) continue;
      out.push_back(verify_conjecture(c));
    }
    return out;
  });
}

std::string scan_csv(const std::vector<ScanRecord>& records, bool timing) {
  std::string out = "p,ell0,verdict,g,x,y,ms\n";
  char buf[160];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%llu,%llu,%s,", static_cast<unsigned long long>(r.p),
                  static_cast<unsigned long long>(r.ell0), to_string(r.verdict));
    out += buf;
    if (r.witness) {
      std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,", static_cast<unsigned long long>(r.witness->g),
                    static_cast<unsigned long long>(r.witness->x), static_cast<unsigned long long>(r.witness->y));
      out += buf;
    } else {
      out += ",,,";
    }
    std::snprintf(buf, sizeof buf, "%.3f\n", timing ? r.ms : 0.0);
    out += buf;
  }
  return out;
}

PEllSet p_ell_set(uint64_t ell, uint64_t lo, unsigned jobs) {
  if (ell < 3) throw DomainError("p_ell_set: ell must be at least 3");
  if (ell > (1ULL << 31)) throw DomainError("p_ell_set: ell too large");
  PEllSet s;
  s.ell = ell;
  s.lo = lo;
  s.bound = solvability_bound(ell);
  if (s.bound <= 2) return s;
  const uint64_t hi = static_cast<uint64_t>(s.bound) - 1;
  const Progression pr = progression(lo + 1, hi, 2 * ell, 1);
  const uint64_t blocks = (pr.count + kBlock - 1) / kBlock;
  s.primes = run_blocks<uint64_t>(blocks, jobs, [&](uint64_t b) {
    std::vector<uint64_t> out;
    const uint64_t end = std::min(pr.count, (b + 1) * kBlock);
    for (uint64_t i = b * kBlock; i < end; ++i) {
      const uint64_t c = pr.first + i * pr.step;
      if (is_prime(c) && h_index(c).ell0 == ell) out.push_back(c);
    }
    return out;
  });
  return s;
}

std::vector<uint64_t> fibonacci_primitive_roots(uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("fibonacci_primitive_roots: p must be an odd prime");
  // g^2 - g - 1 = 0  =>  g = (1 +- sqrt 5) / 2
  const auto s = sqrt_mod(5 % p, p);
  if (!s) return {};
  const uint64_t half = inv_mod(2, p);
  std::vector<uint64_t> cand{mul_mod(add_mod(1, *s, p), half, p), mul_mod(sub_mod(1, *s, p), half, p)};
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const auto fac = factorize(p - 1);
  std::vector<uint64_t> out;
  for (uint64_t g : cand) {
    if (g != 0 && is_primitive_root(g, p, fac)) out.push_back(g);
  }
  return out;
}

std::vector<uint64_t> fib_prime_sequence(uint64_t limit) {
  std::vector<uint64_t> out;
  for (uint64_t p = 3; p <= limit; p += 2) {
    if (is_prime(p) && !fibonacci_primitive_roots(p).empty()) out.push_back(p);
  }
  return out;
}

}  // namespace cacforge
