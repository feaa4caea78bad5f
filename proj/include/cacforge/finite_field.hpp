#pragma once

// Finite fields F_q, q = p^k, represented by full exponential and logarithm
// tables over a fixed generator. Elements are encoded as integers
// c0 + c1*p + ... + c_{k-1}*p^{k-1} in [0, q) for the polynomial
// c0 + c1*a + ... + c_{k-1}*a^{k-1}, a the adjoined root of the modulus.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cacforge/error.hpp"
#include "cacforge/nt_core.hpp"

namespace cacforge {

struct FieldElem {
  uint32_t code = 0;
  bool is_zero() const { return code == 0; }
  auto operator<=>(const FieldElem&) const = default;
};

// Coefficients constant term first; always monic of degree >= 1.
using Polynomial = std::vector<uint32_t>;

class ReducibleModulusError : public DomainError {
 public:
  ReducibleModulusError(const std::string& what, Polynomial factor)
      : DomainError(what), factor_(std::move(factor)) {}
  const Polynomial& factor() const { return factor_; }

 private:
  Polynomial factor_;
};

// Largest q for which tables are built.
inline constexpr uint64_t kMaxFieldOrder = 1ULL << 24;

class FieldCtx {
 public:
  uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  uint32_t q() const { return q_; }
  const Polynomial& modulus() const { return modulus_; }
  FieldElem generator() const { return FieldElem{exp_[q_ > 2 ? 1 : 0]}; }
  // Factorization of q - 1, the order of the multiplicative group.
  const Factorization& group_order() const { return group_order_; }

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  FieldElem from_int(int64_t n) const { return FieldElem{static_cast<uint32_t>(reduce_mod(n, p_))}; }
  FieldElem from_coeffs(std::span<const uint32_t> coeffs) const;
  std::vector<uint32_t> coeffs(FieldElem a) const;
  bool contains(FieldElem a) const { return a.code < q_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;  // throws DomainError on zero
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  // Negative exponents invert first; pow(0, 0) = 1.
  FieldElem pow(FieldElem a, int64_t e) const;

  // g0^e for any integer e.
  FieldElem exp(int64_t e) const;
  // e in [0, q-1) with g0^e = a; throws DomainError on zero.
  uint32_t dlog(FieldElem a) const;
  uint32_t dlog_unchecked(FieldElem a) const { return log_[a.code]; }

  uint64_t element_order(FieldElem a) const;
  bool is_generator(FieldElem a) const;

  std::string format(FieldElem a) const;
  // Accepts "c0+c1*a+c2*a^2" style sums of terms c, a, c*a, a^i, c*a^i (any order).
  FieldElem parse(std::string_view text) const;

  friend std::shared_ptr<const FieldCtx> build_field(uint32_t p, Polynomial modulus);

 private:
  FieldCtx() = default;

  uint32_t p_ = 0;
  unsigned k_ = 0;
  uint32_t q_ = 0;
  Polynomial modulus_;
  Factorization group_order_;
  std::vector<uint32_t> pow_p_;  // p^i for i < k
  std::vector<uint32_t> exp_;    // exp_[e] = code of g0^e, e in [0, q-1)
  std::vector<uint32_t> log_;    // log_[code] for code != 0
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

FieldPtr make_prime_field(uint64_t p);
// modulus: monic, irreducible over F_p, degree >= 2. Throws ReducibleModulusError.
FieldPtr make_extension_field(uint64_t p, Polynomial modulus);
// Field of order q (a prime power), using the default modulus for that q.
FieldPtr make_field(uint64_t q);

// Smallest monic divisor of degree in [1, deg/2], if any.
std::optional<Polynomial> find_factor(uint32_t p, const Polynomial& f);
bool is_irreducible(uint32_t p, const Polynomial& f);

// x^2+1 over F_3, F_7; x^4+x+1 over F_2; x^2-2 over F_5, F_11, F_13;
// otherwise the irreducible that is smallest comparing c_{k-1}, ..., c_0.
Polynomial default_modulus(uint32_t p, unsigned k);

std::string format_polynomial(const Polynomial& f);
// "1,0,1" (constant term first) -> x^2 + 1.
Polynomial parse_polynomial(std::string_view text);

// All generators g0^t with gcd(t, q-1) = 1, ascending in t.
std::vector<FieldElem> generators(const FieldCtx& field);
// Exponents t in [1, q-1) with gcd(t, q-1) = 1, ascending.
std::vector<uint64_t> generator_exponents(const FieldCtx& field);

enum class SubgroupKind { ell_powers, minus_one_and_two };

// A subgroup of F_q^x of index `index`, which in a cyclic group is the group
// of index-th powers; cosets are labeled by dlog mod index.
class SubgroupCtx {
 public:
  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  SubgroupKind kind() const { return kind_; }
  uint64_t order() const { return order_; }
  uint64_t index() const { return index_; }

  uint64_t coset_of(FieldElem a) const;
  // Label of the coset of a in the numbering where generator g carries label 1.
  uint64_t coset_relative_to(FieldElem a, FieldElem g) const;
  bool contains(FieldElem a) const { return !a.is_zero() && coset_of(a) == 0; }
  std::vector<FieldElem> elements() const;

  friend SubgroupCtx make_subgroup_ell(FieldPtr field, uint64_t ell);
  friend SubgroupCtx make_subgroup_H(uint64_t p);
  friend SubgroupCtx make_subgroup_H(FieldPtr field);

 private:
  FieldPtr field_;
  SubgroupKind kind_ = SubgroupKind::ell_powers;
  uint64_t order_ = 0;
  uint64_t index_ = 0;
};

// Subgroup L of ell-th powers; requires ell | q-1.
SubgroupCtx make_subgroup_ell(FieldPtr field, uint64_t ell);
// H = <-1, 2> in F_p^x for an odd prime p; index is ell0.
SubgroupCtx make_subgroup_H(uint64_t p);
SubgroupCtx make_subgroup_H(FieldPtr field);

// Order of <-1, 2> in F_p^x and its index, computed without tables.
struct HIndex {
  uint64_t order_of_two;  // o_p(2)
  uint64_t h_order;       // |H|
  uint64_t ell0;          // (p-1)/|H|
};
HIndex h_index(uint64_t p);
HIndex h_index(uint64_t p, const Factorization& p_minus_1);

}  // namespace cacforge
