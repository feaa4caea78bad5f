#include "cacforge/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cacforge/error.hpp"
#include "cacforge/nt_core.hpp"

namespace cacforge {

namespace {

using i128 = __int128;

void require_divisor(const FieldCtx& field, uint64_t ell) {
  const uint64_t n = field.q() - 1;
  if (ell == 0 || n % ell != 0) {
    throw DomainError("ell = " + std::to_string(ell) + " does not divide q-1 = " + std::to_string(n));
  }
}

int64_t checked_i64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError("value exceeds 64-bit range");
  return static_cast<int64_t>(v);
}

}  // namespace

DiagonalCounter::DiagonalCounter(FieldPtr field, uint64_t ell) : field_(std::move(field)), ell_(ell) {
  require_divisor(*field_, ell_);
  period_ = (field_->q() - 1) / ell_;
  minus_one_ = field_->neg(field_->one());
}

uint64_t DiagonalCounter::root_count(FieldElem c) const {
  if (c.is_zero()) return 1;
  return field_->dlog(c) % ell_ == 0 ? ell_ : 0;
}

std::vector<FieldElem> DiagonalCounter::roots(FieldElem c) const {
  if (c.is_zero()) return {c};
  const uint64_t d = field_->dlog(c);
  if (d % ell_ != 0) return {};
  std::vector<FieldElem> out;
  out.reserve(ell_);
  for (uint64_t i = 0; i < ell_; ++i) out.push_back(field_->exp(static_cast<int64_t>(d / ell_ + i * period_)));
  return out;
}

bool DiagonalCounter::satisfies(FieldElem g, FieldElem x, FieldElem y) const {
  const auto& f = *field_;
  const auto ell = static_cast<int64_t>(ell_);
  const FieldElem lhs = f.add(f.add(f.mul(f.mul(g, g), f.pow(x, ell)), f.mul(g, f.pow(y, ell))), f.one());
  return lhs.is_zero();
}

bool DiagonalCounter::satisfies_projective(FieldElem g, const ProjectivePoint& pt) const {
  const auto& f = *field_;
  const auto ell = static_cast<int64_t>(ell_);
  if (pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero()) return false;
  const FieldElem lhs =
      f.add(f.add(f.mul(f.mul(g, g), f.pow(pt[0], ell)), f.mul(g, f.pow(pt[1], ell))), f.pow(pt[2], ell));
  return lhs.is_zero();
}

uint64_t DiagonalCounter::affine(FieldElem g) const {
  const auto& f = *field_;
  const FieldElem g_inv = f.inv(g);
  const uint64_t log_g2 = 2 * static_cast<uint64_t>(f.dlog(g));
  // x = 0
  uint64_t total = root_count(f.mul(minus_one_, g_inv));
  // x != 0: x^ell runs over the ell-th powers g0^{ell*i}, each hit by ell values of x
  uint64_t hits = 0;
  for (uint64_t i = 0; i < period_; ++i) {
    const FieldElem s = f.exp(static_cast<int64_t>(log_g2 + ell_ * i));
    const FieldElem c = f.neg(f.add(f.one(), s));
    hits += c.is_zero() ? 1 : root_count(f.mul(c, g_inv));
  }
  return total + ell_ * hits;
}

uint64_t DiagonalCounter::at_infinity(FieldElem g) const { return root_count(field_->neg(g)); }

std::optional<std::pair<FieldElem, FieldElem>> DiagonalCounter::first_solution(FieldElem g,
                                                                               bool require_nonzero_xy) const {
  const auto& f = *field_;
  const FieldElem g_inv = f.inv(g);
  const FieldElem g2 = f.mul(g, g);
  std::optional<std::pair<FieldElem, FieldElem>> y_zero;
  // x^ell has period (q-1)/ell in the exponent of x, so the first hit lies in [0, period)
  for (uint64_t e = 0; e < period_; ++e) {
    const FieldElem x = f.exp(static_cast<int64_t>(e));
    const FieldElem c = f.neg(f.add(f.one(), f.mul(g2, f.pow(x, static_cast<int64_t>(ell_)))));
    if (c.is_zero()) {
      if (!y_zero) y_zero = std::make_pair(x, f.zero());
      continue;
    }
    const FieldElem target = f.mul(c, g_inv);
    if (is_ell_power(target)) return std::make_pair(x, roots(target).front());
  }
  if (require_nonzero_xy) return std::nullopt;
  if (y_zero) return y_zero;
  const auto ys = roots(f.mul(minus_one_, g_inv));
  if (!ys.empty()) return std::make_pair(f.zero(), ys.front());
  return std::nullopt;
}

std::vector<ProjectivePoint> DiagonalCounter::zero_coord_solutions(FieldElem g) const {
  const auto& f = *field_;
  std::vector<ProjectivePoint> out;
  // (0 : y : 1): g y^ell = -1
  for (FieldElem y : roots(f.neg(f.inv(g)))) out.push_back({f.zero(), y, f.one()});
  // (x : 0 : 1): g^2 x^ell = -1
  for (FieldElem x : roots(f.neg(f.inv(f.mul(g, g))))) out.push_back({x, f.zero(), f.one()});
  // (1 : y : 0): y^ell = -g
  for (FieldElem y : roots(f.neg(g))) out.push_back({f.one(), y, f.zero()});
  return out;
}

ZeroCoordClassification DiagonalCounter::classify(FieldElem g) const {
  const auto& f = *field_;
  ZeroCoordClassification c;
  for (const auto& pt : zero_coord_solutions(g)) {
    if (pt[0].is_zero()) {
      ++c.x_zero;
    } else if (pt[1].is_zero()) {
      ++c.y_zero;
    } else {
      ++c.z_zero;
    }
  }
  c.exists = c.x_zero + c.y_zero + c.z_zero > 0;
  c.minus_one_in_L = f.dlog(minus_one_) % ell_ == 0;
  c.predicted = zero_coord_predicted(ell_, c.minus_one_in_L);
  return c;
}

bool zero_coord_predicted(uint64_t ell, bool minus_one_in_L) {
  return ell == 1 || ell == 2 || (ell == 4 && !minus_one_in_L);
}

uint64_t count_affine(FieldPtr field, uint64_t ell, FieldElem g) {
  if (g.is_zero()) throw DomainError("count_affine: g must be nonzero");
  return DiagonalCounter(std::move(field), ell).affine(g);
}

uint64_t count_projective(FieldPtr field, uint64_t ell, FieldElem g) {
  if (g.is_zero()) throw DomainError("count_projective: g must be nonzero");
  return DiagonalCounter(std::move(field), ell).projective(g);
}

ZeroCoordClassification classify_zero_coord(FieldPtr field, uint64_t ell, FieldElem g) {
  if (g.is_zero()) throw DomainError("classify_zero_coord: g must be nonzero");
  return DiagonalCounter(std::move(field), ell).classify(g);
}

void require_proper_divisor(const FieldCtx& field, uint64_t ell) {
  require_divisor(field, ell);
  if (ell == field.q() - 1) {
    throw DegenerateExponentError("ell = q-1 = " + std::to_string(ell) + " is not a proper divisor of q-1");
  }
}

std::optional<Witness> find_solvable_generator(FieldPtr field, uint64_t ell, bool require_nonzero_xy) {
  require_proper_divisor(*field, ell);
  const DiagonalCounter counter(field, ell);
  for (FieldElem g : generators(*field)) {
    if (auto sol = counter.first_solution(g, require_nonzero_xy)) return Witness{g, sol->first, sol->second};
  }
  return std::nullopt;
}

DiagonalReport solve(FieldPtr field, uint64_t ell, bool require_nonzero_xy) {
  DiagonalReport r;
  r.q = field->q();
  r.ell = ell;
  r.witness = find_solvable_generator(field, ell, require_nonzero_xy);
  r.g = r.witness ? r.witness->g : field->generator();
  const DiagonalCounter counter(field, ell);
  r.n_affine = counter.affine(r.g);
  r.n_proj = r.n_affine + counter.at_infinity(r.g);
  r.zero_coord_solutions = counter.zero_coord_solutions(r.g);
  return r;
}

int64_t solvability_bound(uint64_t ell) {
  if (ell == 0) throw DomainError("solvability_bound: ell must be positive");
  const unsigned w = omega(ell);
  const i128 delta = ell % 4 == 0 ? 1 : 0;
  const i128 inner = (static_cast<i128>(1) << w) * (static_cast<i128>(ell) - 3 - delta) + 2;
  return checked_i64(inner * inner - 2);
}

BoundSheet bound_sheet(uint64_t ell) {
  if (ell == 0) throw DomainError("bound_sheet: ell must be positive");
  if (ell > (1ULL << 31)) throw DomainError("bound_sheet: ell too large");
  BoundSheet s;
  s.ell = ell;
  s.omega = omega(ell);
  s.delta = ell % 4 == 0 ? 1 : 0;
  s.b_ell = solvability_bound(ell);
  const uint64_t a = ell - 1;
  const uint64_t b = ell >= 2 ? (ell - 1) * (ell - 2) : 0;
  s.genus = b / 2;
  s.hasse_weil_threshold = b * b;
  // q > a + b sqrt(q)  <=>  q > a and (q - a)^2 > b^2 q; monotone once true
  auto holds = [&](uint64_t q) {
    if (q <= a) return false;
    const i128 d = static_cast<i128>(q - a);
    return d * d > static_cast<i128>(b) * b * q;
  };
  const double root = (static_cast<double>(b) + std::sqrt(static_cast<double>(b) * b + 4.0 * a)) / 2.0;
  uint64_t q = static_cast<uint64_t>(std::max(1.0, std::floor(root * root) - 4.0));
  while (q > 1 && holds(q - 1)) --q;
  while (!holds(q)) ++q;
  s.crude_q_threshold = q;
  return s;
}

bool hasse_weil_check(FieldPtr field, uint64_t ell) {
  const DiagonalCounter counter(field, ell);
  const i128 b = ell >= 2 ? static_cast<i128>(ell - 1) * (ell - 2) : 0;
  const i128 q = field->q();
  for (FieldElem g : generators(*field)) {
    const i128 dev = static_cast<i128>(counter.projective(g)) - (q + 1);
    if (dev * dev > b * b * q) return false;
  }
  return true;
}

CacSizeSheet cac_size_sheet(uint64_t p) {
  if (p < 5 || !is_prime(p)) throw DomainError("cac_size_sheet: p must be a prime >= 5");
  const HIndex hi = h_index(p);
  CacSizeSheet s;
  s.p = p;
  s.o2 = hi.order_of_two;
  s.ell0 = hi.ell0;
  if (s.o2 % 2 == 1) {
    s.O_p = (p - 1) / (2 * s.o2);
  } else if (s.o2 % 4 == 2) {
    s.O_p = (p - 1) / s.o2;
  } else {
    s.O_p = 0;
  }
  s.lower = (p - 1 - 2 * s.O_p) / 4;
  s.upper = s.lower + s.O_p / 3;
  if (s.o2 % 4 != 0) s.m_target = (p - 1 - 2 * s.ell0) / 4 + s.ell0 / 3;
  return s;
}

bool divisor_solvability(FieldPtr field, uint64_t ell, uint64_t ell_prime) {
  if (ell_prime == 0 || ell % ell_prime != 0) throw DomainError("divisor_solvability: ell' must divide ell");
  const auto w = find_solvable_generator(field, ell, false);
  if (!w) return true;
  const auto e = static_cast<int64_t>(ell / ell_prime);
  const FieldElem x = field->pow(w->x, e);
  const FieldElem y = field->pow(w->y, e);
  if (!DiagonalCounter(field, ell_prime).satisfies(w->g, x, y)) return false;
  return find_solvable_generator(field, ell_prime, false).has_value();
}

bool satisfies_diagonal_prime(uint64_t p, uint64_t ell, uint64_t g, uint64_t x, uint64_t y) {
  const uint64_t g2 = mul_mod(g, g, p);
  const uint64_t lhs = add_mod(add_mod(mul_mod(g2, pow_mod(x, ell, p), p), mul_mod(g, pow_mod(y, ell, p), p), p), 1, p);
  return lhs == 0;
}

std::optional<PrimeWitness> find_solvable_generator_prime(uint64_t p, uint64_t ell, bool require_nonzero_xy,
                                                          const Factorization& p_minus_1) {
  if (!is_prime(p) || p < 3) throw DomainError("find_solvable_generator_prime: p must be an odd prime");
  const uint64_t n = p - 1;
  if (ell == 0 || n % ell != 0) throw DomainError("ell does not divide p-1");
  if (ell == n) throw DegenerateExponentError("ell = p-1 is not a proper divisor of p-1");
  const uint64_t period = n / ell;
  const uint64_t g0 = smallest_primitive_root(p, p_minus_1);
  const uint64_t h = pow_mod(g0, ell, p);
  auto in_L = [&](uint64_t v) { return pow_mod(v, period, p) == 1; };
  auto least_root = [&](uint64_t v) { return pow_mod(g0, discrete_log(v, g0, p, p_minus_1) / ell, p); };

  for (uint64_t t = 1; t < n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    const uint64_t g = pow_mod(g0, t, p);
    const uint64_t g_inv = inv_mod(g, p);
    const uint64_t g2 = mul_mod(g, g, p);
    std::optional<PrimeWitness> y_zero;
    uint64_t x = 1, u = 1;  // u = x^ell
    for (uint64_t e = 0; e < period; ++e) {
      const uint64_t c = sub_mod(p - 1, mul_mod(g2, u, p), p);  // -1 - g^2 x^ell
      if (c == 0) {
        if (!y_zero) y_zero = PrimeWitness{g, x, 0};
      } else {
        const uint64_t v = mul_mod(c, g_inv, p);
        if (in_L(v)) return PrimeWitness{g, x, least_root(v)};
      }
      x = mul_mod(x, g0, p);
      u = mul_mod(u, h, p);
    }
    if (require_nonzero_xy) continue;
    if (y_zero) return y_zero;
    const uint64_t v = mul_mod(p - 1, g_inv, p);
    if (in_L(v)) return PrimeWitness{g, 0, least_root(v)};
  }
  return std::nullopt;
}

std::optional<PrimeWitness> find_solvable_generator_prime(uint64_t p, uint64_t ell, bool require_nonzero_xy) {
  if (!is_prime(p)) throw DomainError("find_solvable_generator_prime: p must be prime");
  return find_solvable_generator_prime(p, ell, require_nonzero_xy, factorize(p - 1));
}

}  // namespace cacforge
