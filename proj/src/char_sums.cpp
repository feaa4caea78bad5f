#include "cacforge/char_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cacforge/diagonal.hpp"
#include "cacforge/error.hpp"

namespace cacforge {

CharacterGroup::CharacterGroup(FieldPtr field, uint64_t ell) : field_(std::move(field)), ell_(ell) {
  const uint64_t n = field_->q() - 1;
  if (ell_ == 0 || n % ell_ != 0) {
    throw DomainError("character order " + std::to_string(ell_) + " does not divide q-1 = " + std::to_string(n));
  }
  roots_.reserve(ell_);
  for (uint64_t i = 0; i < ell_; ++i) {
    roots_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(ell_)));
  }
}

ComplexVal CharacterGroup::eval(int64_t j, FieldElem a) const {
  const uint64_t jr = reduce_mod(j, ell_);
  if (a.is_zero()) return jr == 0 ? ComplexVal{1.0, 0.0} : ComplexVal{0.0, 0.0};
  return roots_[mul_mod(jr, residue(a), ell_)];
}

ComplexVal char_eval(const Character& chi, FieldElem a) {
  return chi.group->eval(static_cast<int64_t>(chi.power), a);
}

ComplexVal jacobi_sum(const Character& chi_j, const Character& chi_k) {
  if (chi_j.group != chi_k.group) throw DomainError("jacobi_sum: characters from different groups");
  const auto& f = chi_j.group->field();
  ComplexVal sum = 0.0;
  for (uint32_t code = 0; code < f.q(); ++code) {
    const FieldElem a{code};
    sum += char_eval(chi_j, a) * char_eval(chi_k, f.sub(f.one(), a));
  }
  return sum;
}

JacobiTable::JacobiTable(const CharacterGroup& group) : group_(&group), ell_(group.order()) {
  const auto& f = group.field();
  // (dlog(a) mod ell, dlog(1-a) mod ell) histogram over a not in {0, 1}; codes 0 and 1 are 0 and 1
  std::vector<uint64_t> hist(ell_ * ell_, 0);
  for (uint32_t code = 2; code < f.q(); ++code) {
    const FieldElem a{code};
    ++hist[group.residue(a) * ell_ + group.residue(f.sub(f.one(), a))];
  }
  std::vector<std::pair<uint64_t, uint64_t>> cells;
  for (uint64_t i = 0; i < hist.size(); ++i) {
    if (hist[i] != 0) cells.emplace_back(i, hist[i]);
  }
  table_.assign(ell_ * ell_, 0.0);
  for (uint64_t j = 0; j < ell_; ++j) {
    for (uint64_t k = 0; k < ell_; ++k) {
      ComplexVal sum = 0.0;
      for (const auto& [cell, count] : cells) {
        const uint64_t r1 = cell / ell_, r2 = cell % ell_;
        sum += static_cast<double>(count) * group.root(static_cast<int64_t>((j * r1 + k * r2) % ell_));
      }
      // a = 0 contributes chi^j(0) chi^k(1); a = 1 contributes chi^j(1) chi^k(0)
      if (j == 0) sum += 1.0;
      if (k == 0) sum += 1.0;
      table_[j * ell_ + k] = sum;
    }
  }
}

RoundedCount round_count(ComplexVal z, double tolerance, const char* what) {
  const double rounded = std::round(z.real());
  const double residual = std::max(std::abs(z.real() - rounded), std::abs(z.imag()));
  if (residual >= tolerance || rounded < 0) {
    throw VerificationError(std::string(what) + ": character sum " + std::to_string(z.real()) + " + " +
                            std::to_string(z.imag()) + "i is not a nonnegative integer within tolerance");
  }
  return {static_cast<int64_t>(rounded), residual};
}

RoundedCount count_via_charsum(const JacobiTable& jacobi, FieldElem g, double tolerance) {
  const auto& group = jacobi.group();
  const auto& f = group.field();
  require_proper_divisor(f, group.order());
  if (!f.is_generator(g)) throw DomainError("count_via_charsum: g = " + f.format(g) + " is not a generator");
  const uint64_t ell = group.order();
  const FieldElem g_inv = f.inv(g);
  const uint64_t r1 = group.residue(f.neg(f.mul(g_inv, g_inv)));
  const uint64_t r2 = group.residue(f.neg(g_inv));
  ComplexVal sum = static_cast<double>(f.q());
  for (uint64_t j = 1; j < ell; ++j) {
    for (uint64_t k = 1; k < ell; ++k) {
      sum += group.root(static_cast<int64_t>((j * r1 + k * r2) % ell)) * jacobi.at(j, k);
    }
  }
  return round_count(sum, tolerance, "count_via_charsum");
}

uint64_t count_via_charsum(FieldPtr field, uint64_t ell, FieldElem g) {
  require_proper_divisor(*field, ell);
  const CharacterGroup group(std::move(field), ell);
  const JacobiTable jacobi(group);
  return static_cast<uint64_t>(count_via_charsum(jacobi, g).value);
}

RoundedCount generator_power_count(const JacobiTable& jacobi, uint64_t t, double tolerance) {
  const auto& group = jacobi.group();
  const auto& f = group.field();
  const uint64_t ell = group.order();
  require_proper_divisor(f, ell);
  if (ell < 3) throw DomainError("generator_power_count: requires ell >= 3");
  if (t == 0 || std::gcd(t, ell) != 1) throw DomainError("generator_power_count: t must be coprime to ell");
  const uint64_t r_minus_one = group.residue(f.neg(f.one()));
  const uint64_t tr = t % ell;
  ComplexVal sum = static_cast<double>(f.q()) + 1.0;
  for (uint64_t j = 1; j < ell; ++j) {
    for (uint64_t k = 1; k < ell; ++k) {
      if (j + k == ell) continue;
      // chi(-1)^{j+k} * chi(g0^{-1})^{(2j+k)t}, with chi(g0) = zeta
      const uint64_t plus = (r_minus_one * (j + k)) % ell;
      const uint64_t minus = ((2 * j + k) % ell) * tr % ell;
      sum += group.root(static_cast<int64_t>(plus) - static_cast<int64_t>(minus)) * jacobi.at(j, k);
    }
  }
  return round_count(sum, tolerance, "generator_power_count");
}

uint64_t generator_power_count(FieldPtr field, uint64_t ell, uint64_t t) {
  require_proper_divisor(*field, ell);
  const CharacterGroup group(std::move(field), ell);
  const JacobiTable jacobi(group);
  return static_cast<uint64_t>(generator_power_count(jacobi, t).value);
}

RoundedCount generator_subsum_via_ramanujan(const JacobiTable& jacobi, double tolerance) {
  const auto& group = jacobi.group();
  const auto& f = group.field();
  const uint64_t ell = group.order();
  require_proper_divisor(f, ell);
  if (ell < 3) throw DomainError("generator_subsum_via_ramanujan: requires ell >= 3");
  const uint64_t r_minus_one = group.residue(f.neg(f.one()));
  ComplexVal sum = static_cast<double>(euler_phi(ell)) * (static_cast<double>(f.q()) + 1.0);
  for (uint64_t j = 1; j < ell; ++j) {
    for (uint64_t k = 1; k < ell; ++k) {
      if (j + k == ell) continue;
      const double c = static_cast<double>(ramanujan_sum(ell, static_cast<int64_t>(2 * j + k)));
      if (c == 0.0) continue;
      sum += c * group.root(static_cast<int64_t>((r_minus_one * (j + k)) % ell)) * jacobi.at(j, k);
    }
  }
  return round_count(sum, tolerance, "generator_subsum_via_ramanujan");
}

uint64_t aggregate_N(FieldPtr field, uint64_t ell) {
  require_proper_divisor(*field, ell);
  const DiagonalCounter counter(field, ell);
  uint64_t total = 0;
  for (FieldElem g : generators(*field)) total += counter.affine(g);
  return total;
}

uint64_t aggregate_N_reduced(FieldPtr field, uint64_t ell) {
  require_proper_divisor(*field, ell);
  const DiagonalCounter counter(field, ell);
  uint64_t subsum = 0;
  for (uint64_t t = 1; t <= ell; ++t) {
    if (std::gcd(t, ell) == 1) subsum += counter.affine(field->exp(static_cast<int64_t>(t)));
  }
  return euler_phi(field->q() - 1) / euler_phi(ell) * subsum;
}

}  // namespace cacforge
