#pragma once

// Point counting and solvability search for the twisted diagonal curve
//   C_g : g^2 X^ell + g Y^ell + 1 = 0
// over F_q, its projective closure g^2 X^ell + g Y^ell + Z^ell = 0, and the
// numeric thresholds attached to it.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cacforge/finite_field.hpp"

namespace cacforge {

struct Witness {
  FieldElem g;
  FieldElem x;
  FieldElem y;
};

// A projective point (x : y : z), normalized so the last nonzero coordinate is 1.
using ProjectivePoint = std::array<FieldElem, 3>;

struct DiagonalReport {
  uint64_t q = 0;
  uint64_t ell = 0;
  FieldElem g;  // generator the counts refer to
  uint64_t n_affine = 0;
  uint64_t n_proj = 0;
  std::optional<Witness> witness;
  std::vector<ProjectivePoint> zero_coord_solutions;
};

struct ZeroCoordClassification {
  bool exists = false;          // found by enumeration
  bool predicted = false;       // ell in {1, 2} or (ell = 4 and -1 not an ell-th power)
  bool minus_one_in_L = false;
  uint64_t x_zero = 0;          // points (0 : y : 1)
  uint64_t y_zero = 0;          // points (x : 0 : 1)
  uint64_t z_zero = 0;          // points (1 : y : 0)
};

struct BoundSheet {
  uint64_t ell = 0;
  unsigned omega = 0;
  unsigned delta = 0;
  int64_t b_ell = 0;
  uint64_t genus = 0;
  uint64_t crude_q_threshold = 0;     // least q with q > (ell-1) + (ell-1)(ell-2) sqrt(q)
  uint64_t hasse_weil_threshold = 0;  // (ell-1)^2 (ell-2)^2
};

struct CacSizeSheet {
  uint64_t p = 0;
  uint64_t o2 = 0;    // o_p(2)
  uint64_t ell0 = 0;  // [F_p^x : <-1, 2>]
  uint64_t O_p = 0;
  uint64_t lower = 0;
  uint64_t upper = 0;
  std::optional<uint64_t> m_target;  // set when 4 does not divide o_p(2)
};

// Per-(field, ell) counting engine. ell must divide q - 1; g may be any
// nonzero element unless an operation says otherwise.
class DiagonalCounter {
 public:
  DiagonalCounter(FieldPtr field, uint64_t ell);

  const FieldCtx& field() const { return *field_; }
  uint64_t ell() const { return ell_; }

  // Number of y in F_q with y^ell = c.
  uint64_t root_count(FieldElem c) const;
  // The ell-th roots of c ordered by ascending discrete log (0 alone for c = 0).
  std::vector<FieldElem> roots(FieldElem c) const;
  bool is_ell_power(FieldElem c) const { return !c.is_zero() && field_->dlog(c) % ell_ == 0; }

  bool satisfies(FieldElem g, FieldElem x, FieldElem y) const;
  bool satisfies_projective(FieldElem g, const ProjectivePoint& pt) const;

  uint64_t affine(FieldElem g) const;
  uint64_t at_infinity(FieldElem g) const;
  uint64_t projective(FieldElem g) const { return affine(g) + at_infinity(g); }

  // First solution in the canonical order: x by ascending dlog, then the y of
  // least dlog; solutions with x*y != 0 first. Unless `require_nonzero_xy`,
  // falls back to y = 0 and then x = 0 solutions.
  std::optional<std::pair<FieldElem, FieldElem>> first_solution(FieldElem g, bool require_nonzero_xy) const;

  std::vector<ProjectivePoint> zero_coord_solutions(FieldElem g) const;
  ZeroCoordClassification classify(FieldElem g) const;

 private:
  FieldPtr field_;
  uint64_t ell_;
  uint64_t period_;  // (q-1)/ell
  FieldElem minus_one_;
};

uint64_t count_affine(FieldPtr field, uint64_t ell, FieldElem g);
uint64_t count_projective(FieldPtr field, uint64_t ell, FieldElem g);
ZeroCoordClassification classify_zero_coord(FieldPtr field, uint64_t ell, FieldElem g);
bool zero_coord_predicted(uint64_t ell, bool minus_one_in_L);

// Throws DomainError unless ell | q-1, DegenerateExponentError if ell = q-1.
void require_proper_divisor(const FieldCtx& field, uint64_t ell);

// Scans generators by ascending exponent t; nullopt if none admits a solution.
std::optional<Witness> find_solvable_generator(FieldPtr field, uint64_t ell, bool require_nonzero_xy);
DiagonalReport solve(FieldPtr field, uint64_t ell, bool require_nonzero_xy);

// (2^omega(ell) (ell - 3 - delta) + 2)^2 - 2, delta = 1 iff 4 | ell.
int64_t solvability_bound(uint64_t ell);
BoundSheet bound_sheet(uint64_t ell);

// |N_proj - (q+1)| <= (ell-1)(ell-2) sqrt(q) for every generator, in exact integers.
bool hasse_weil_check(FieldPtr field, uint64_t ell);

CacSizeSheet cac_size_sheet(uint64_t p);

// A witness for exponent ell, raised to ell/ell_prime, must solve the
// exponent-ell_prime equation with the same g; then a search for ell_prime
// must also succeed. Vacuously true if ell has no witness.
bool divisor_solvability(FieldPtr field, uint64_t ell, uint64_t ell_prime);

// Table-free route for prime fields of any 64-bit size, following the same
// canonical order as find_solvable_generator.
struct PrimeWitness {
  uint64_t g;
  uint64_t x;
  uint64_t y;
  bool operator==(const PrimeWitness&) const = default;
};

bool satisfies_diagonal_prime(uint64_t p, uint64_t ell, uint64_t g, uint64_t x, uint64_t y);
std::optional<PrimeWitness> find_solvable_generator_prime(uint64_t p, uint64_t ell, bool require_nonzero_xy,
                                                          const Factorization& p_minus_1);
std::optional<PrimeWitness> find_solvable_generator_prime(uint64_t p, uint64_t ell, bool require_nonzero_xy);

}  // namespace cacforge
