#pragma once

// Multiplicative characters of order ell on F_q, Jacobi sums, and the
// character-sum expressions for the number of points on
// g^2 X^ell + g Y^ell + 1 = 0.

#include <complex>
#include <cstdint>
#include <vector>

#include "cacforge/finite_field.hpp"

namespace cacforge {

using ComplexVal = std::complex<double>;

// Tolerances for rounding character-sum evaluations to integers.
inline constexpr double kCountTolerance = 1e-3;
inline constexpr double kJacobiTolerance = 1e-9;

// The characters chi^j, j in [0, ell), where chi(g0^e) = zeta_ell^e.
class CharacterGroup {
 public:
  CharacterGroup(FieldPtr field, uint64_t ell);

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  uint64_t order() const { return ell_; }

  // zeta_ell^i for any integer i
  ComplexVal root(int64_t i) const { return roots_[reduce_mod(i, ell_)]; }
  // Extended character: chi^j(0) = 1 if j = 0 (mod ell), else 0.
  ComplexVal eval(int64_t j, FieldElem a) const;
  // dlog(a) mod ell, for a != 0
  uint64_t residue(FieldElem a) const { return field_->dlog(a) % ell_; }

 private:
  FieldPtr field_;
  uint64_t ell_;
  std::vector<ComplexVal> roots_;
};

struct Character {
  const CharacterGroup* group;
  uint64_t power;  // j in [0, ell)

  bool is_trivial() const { return power == 0; }
  Character operator*(const Character& other) const { return {group, (power + other.power) % group->order()}; }
  Character inverse() const { return {group, (group->order() - power) % group->order()}; }
};

ComplexVal char_eval(const Character& chi, FieldElem a);

// sum over all a in F_q of chi_j(a) * chi_k(1 - a), extended characters.
ComplexVal jacobi_sum(const Character& chi_j, const Character& chi_k);

// All J(chi^j, chi^k) for one (field, ell), computed once.
class JacobiTable {
 public:
  explicit JacobiTable(const CharacterGroup& group);

  const CharacterGroup& group() const { return *group_; }
  const ComplexVal& at(uint64_t j, uint64_t k) const { return table_[(j % ell_) * ell_ + (k % ell_)]; }

 private:
  const CharacterGroup* group_;
  uint64_t ell_;
  std::vector<ComplexVal> table_;
};

// Value of a character-sum evaluation and its distance from the integer it rounds to.
struct RoundedCount {
  int64_t value;
  double residual;
};

// Rounds z to a nonnegative integer; throws VerificationError if the
// imaginary part or the distance to the integer reaches `tolerance`.
RoundedCount round_count(ComplexVal z, double tolerance, const char* what);

// N_g = q + sum_{1<=j,k<=ell-1} chi^j(-g^-2) chi^k(-g^-1) J(chi^j, chi^k).
// Requires g a generator and ell a proper divisor of q-1.
RoundedCount count_via_charsum(const JacobiTable& jacobi, FieldElem g, double tolerance = kCountTolerance);
uint64_t count_via_charsum(FieldPtr field, uint64_t ell, FieldElem g);

// N_{g0^t} = q + 1 + sum over j + k != ell of
// chi(-1)^{j+k} chi(g0^-1)^{(2j+k)t} J(chi^j, chi^k); ell >= 3, gcd(t, ell) = 1.
RoundedCount generator_power_count(const JacobiTable& jacobi, uint64_t t, double tolerance = kCountTolerance);
uint64_t generator_power_count(FieldPtr field, uint64_t ell, uint64_t t);

// sum_{1<=t<=ell, (t,ell)=1} N_{g0^t}
//   = phi(ell)(q+1) + sum_{j+k != ell} chi(-1)^{j+k} J(chi^j, chi^k) c_ell(2j+k),
// the subsum whose positivity yields a solvable generator. Requires ell >= 3.
RoundedCount generator_subsum_via_ramanujan(const JacobiTable& jacobi, double tolerance = kCountTolerance);

// N(q, ell) = sum over all generators g of N_g, by brute-force counting.
uint64_t aggregate_N(FieldPtr field, uint64_t ell);
// phi(q-1)/phi(ell) * sum_{1<=t<=ell, (t,ell)=1} N_{g0^t}.
uint64_t aggregate_N_reduced(FieldPtr field, uint64_t ell);

}  // namespace cacforge
