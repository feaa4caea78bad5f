#pragma once

// Weight-3 conflict-avoiding codes of odd prime length: data model,
// difference-set verifier, and the optimal construction driven by solutions
// of g^2 X^ell0 + g Y^ell0 + 1 = 0 over F_p.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cacforge/diagonal.hpp"

namespace cacforge {

enum class CodewordKind { equi, nonequi };

const char* to_string(CodewordKind kind);

struct Codeword {
  std::array<uint64_t, 3> elements{};  // ascending residues mod n
  CodewordKind kind = CodewordKind::nonequi;
  bool operator==(const Codeword&) const = default;
};

// Sorts and reduces the residues; kind is equi when one element is the
// midpoint of the other two. Throws DomainError on repeated residues or n < 3.
Codeword make_codeword(std::array<uint64_t, 3> elements, uint64_t n);

// All pairwise differences x_i - x_j, i != j, as sorted distinct residues.
std::vector<uint64_t> difference_set(const Codeword& w, uint64_t n);

struct CacCode {
  uint64_t n = 0;
  std::vector<Codeword> codewords;
  std::vector<uint64_t> delta_union;  // sorted
  std::optional<PrimeWitness> witness;
  bool operator==(const CacCode&) const = default;
};

// Builds delta_union from the codewords, which are reordered by the least
// element of their difference sets.
CacCode make_code(uint64_t n, std::vector<Codeword> codewords, std::optional<PrimeWitness> witness = {});

struct CacVerdict {
  bool valid = true;
  // On conflict: indices of two codewords whose difference sets share `residue`.
  size_t first = 0;
  size_t second = 0;
  uint64_t residue = 0;
};

CacVerdict verify_cac(const CacCode& code);

struct TripleWitness {
  uint64_t p = 0;
  uint64_t ell0 = 0;
  uint64_t g = 0;
  uint64_t x = 0;
  uint64_t y = 0;
  std::vector<std::array<uint64_t, 3>> triples;  // (a_i, b_i, c_i), a_i + b_i + c_i = 0
  std::vector<std::array<uint64_t, 3>> labels;   // H-coset labels relative to g
};

// Triple i is g^{3(i-1)} (1, g y^ell0, g^2 x^ell0) for i = 1 .. floor(ell0/3).
// Throws DomainError if ell0 < 3, g is not a primitive root, or (x, y) is not
// a solution with x y != 0; VerificationError if a coset label is off.
TripleWitness derive_triples(uint64_t p, uint64_t g, uint64_t x, uint64_t y);

struct CacBuild {
  CacCode code;
  CacSizeSheet sizes;
  std::optional<TripleWitness> triples;
};

// Optimal weight-3 CAC of prime length p >= 5, of size (p-1)/4 when
// 4 | o_p(2) and (p-1-2 ell0)/4 + floor(ell0/3) otherwise.
CacBuild build_optimal_cac(uint64_t p);

// Canonical JSON; throws VerificationError when the code fails verify_cac.
std::string export_cac(const CacCode& code);
// Parses and structurally validates; conflicting codes are accepted so that
// verify_cac can report them. Throws DomainError on malformed input.
CacCode import_cac(std::string_view json_text);

}  // namespace cacforge
