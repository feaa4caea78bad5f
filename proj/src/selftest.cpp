#include "cacforge/selftest.hpp"

#include <functional>

#include "cacforge/cac.hpp"
#include "cacforge/char_sums.hpp"
#include "cacforge/diagonal.hpp"
#include "cacforge/error.hpp"

namespace cacforge {

namespace {

// coef * base^exp, base in the field's text syntax
struct Term {
  int coef;
  const char* base;
  int exp;
};

struct WitnessRow {
  uint64_t q;
  uint64_t ell;
  Term g, x, y;
};

// clang-format off
constexpr WitnessRow kWitnessRows[] = {
    // x^2 + 1 over F_3, x^2 - 2 over F_5, x^2 + 1 over F_7
    {9, 4, {1, "1+a", 1}, {1, "1+a", 1}, {1, "1+a", 1}},
    {13, 4, {1, "2", 1}, {1, "4", 1}, {1, "1", 1}},
    {17, 4, {1, "3", 1}, {1, "6", 1}, {1, "2", 1}},
    {25, 4, {1, "1+2*a", 1}, {1, "1", 1}, {1, "1+2*a", 2}},
    {29, 4, {1, "2", 1}, {1, "4", 1}, {1, "4", 1}},
    {37, 4, {1, "5", 1}, {1, "2", 1}, {1, "2", 1}},
    {41, 4, {1, "6", 1}, {1, "3", 1}, {1, "3", 1}},
    {49, 4, {1, "4+a", 1}, {1, "2", 1}, {2, "4+a", 7}},
    // x^4 + x + 1 over F_2
    {11, 5, {1, "7", 1}, {1, "-1", 1}, {1, "-1", 1}},
    {16, 5, {1, "a", 1}, {1, "a", 2}, {1, "a", 2}},
    {31, 5, {1, "3", 1}, {1, "-3", 1}, {1, "3", 1}},
    // x^2 - 2 over F_5, F_11, F_13; x^2 + 1 over F_7
    {19, 6, {1, "2", 1}, {1, "1", 1}, {1, "2", 1}},
    {25, 6, {1, "3+a", 1}, {1, "3+a", 3}, {1, "3+a", 1}},
    {31, 6, {1, "3", 1}, {1, "19", 1}, {1, "27", 1}},
    {37, 6, {1, "2", 1}, {1, "2", 1}, {1, "1", 1}},
    {43, 6, {1, "3", 1}, {1, "1", 1}, {1, "28", 1}},
    {49, 6, {1, "4+a", 1}, {1, "4+a", 3}, {1, "4+a", 3}},
    {61, 6, {1, "2", 1}, {1, "24", 1}, {1, "4", 1}},
    {67, 6, {1, "2", 1}, {1, "4", 1}, {1, "43", 1}},
    {73, 6, {1, "5", 1}, {1, "1", 1}, {1, "59", 1}},
    {79, 6, {1, "3", 1}, {1, "6", 1}, {1, "6", 1}},
    {97, 6, {1, "5", 1}, {1, "5", 1}, {1, "29", 1}},
    {103, 6, {1, "5", 1}, {1, "5", 1}, {1, "32", 1}},
    {109, 6, {1, "6", 1}, {1, "16", 1}, {1, "26", 1}},
    {121, 6, {1, "2+a", 1}, {1, "2+a", 7}, {1, "2+a", 4}},
    {127, 6, {1, "3", 1}, {1, "84", 1}, {1, "3", 1}},
    {139, 6, {1, "2", 1}, {1, "2", 1}, {1, "103", 1}},
    {151, 6, {1, "6", 1}, {1, "1", 1}, {1, "132", 1}},
    {157, 6, {1, "5", 1}, {1, "22", 1}, {1, "82", 1}},
    {163, 6, {1, "2", 1}, {1, "8", 1}, {1, "1", 1}},
    {169, 6, {1, "7+2*a", 1}, {1, "1", 1}, {1, "7+2*a", 2}},
    {181, 6, {1, "2", 1}, {1, "86", 1}, {1, "148", 1}},
    {193, 6, {1, "5", 1}, {1, "1", 1}, {1, "127", 1}},
    {127, 9, {1, "7", 1}, {1, "3", 1}, {1, "73", 1}},
    {241, 10, {1, "7", 1}, {1, "232", 1}, {1, "45", 1}},
    {641, 10, {1, "3", 1}, {1, "30", 1}, {1, "286", 1}},
};
// clang-format on

struct Check {
  SelftestEntry entry;
  std::function<std::string(bool corrupt)> run;  // empty string on success
};

FieldElem eval_term(const FieldCtx& f, const Term& t) {
  return f.mul(f.from_int(t.coef), f.pow(f.parse(t.base), t.exp));
}

std::string check_witness(const WitnessRow& row, bool corrupt) {
  const FieldPtr field = make_field(row.q);
  const FieldCtx& f = *field;
  const FieldElem g = eval_term(f, row.g);
  FieldElem x = eval_term(f, row.x);
  const FieldElem y = eval_term(f, row.y);
  // g0^ell != 1 for a proper divisor ell, so this always changes g^2 x^ell
  if (corrupt) x = f.mul(x, f.generator());
  if (!f.is_generator(g)) return "g = " + f.format(g) + " is not a generator";
  const FieldElem lhs =
      f.add(f.add(f.mul(f.mul(g, g), f.pow(x, static_cast<int64_t>(row.ell))), f.mul(g, f.pow(y, static_cast<int64_t>(row.ell)))),
            f.one());
  if (!lhs.is_zero()) return "g^2 x^ell + g y^ell + 1 = " + f.format(lhs) + " at x = " + f.format(x) + ", y = " + f.format(y);
  return {};
}

std::string check_bound(uint64_t ell, int64_t expected, bool corrupt) {
  if (corrupt) ++expected;
  const int64_t b = solvability_bound(ell);
  if (b != expected) return "b = " + std::to_string(b) + ", expected " + std::to_string(expected);
  return {};
}

std::string check_unsolvable(uint64_t q, uint64_t ell, bool corrupt) {
  const FieldPtr field = make_field(q);
  // ell = q-1 is outside the proper-divisor counting routes, so sum directly
  uint64_t total = 0;
  const DiagonalCounter counter(field, ell);
  for (FieldElem g : generators(*field)) total += counter.affine(g);
  const uint64_t expected = corrupt ? 1 : 0;
  if (total != expected) return "sum of N_g over generators = " + std::to_string(total);
  return {};
}

std::string check_p31_triple(bool corrupt) {
  const uint64_t p = 31;
  const uint64_t a = 2, b = 3, c = corrupt ? 31 - 6 : 31 - 5;
  if ((a + b + c) % p != 0) return "2 + 3 + c != 0 mod 31";
  const SubgroupCtx H = make_subgroup_H(p);
  const uint64_t ca = H.coset_of(FieldElem{a}), cb = H.coset_of(FieldElem{b}), cc = H.coset_of(FieldElem{static_cast<uint32_t>(c)});
  if (H.index() != 3 || ca == cb || cb == cc || ca == cc) return "triple does not meet three distinct cosets";
  const auto w = make_codeword({0, a, p - c}, p);
  if (difference_set(w, p) != std::vector<uint64_t>{2, 3, 5, 26, 28, 29}) return "codeword {0, 2, 5} has unexpected differences";
  return {};
}

std::string check_p31_code(bool corrupt) {
  std::vector<Codeword> words;
  for (auto e : std::vector<std::array<uint64_t, 3>>{{0, 2, 5}, {0, 4, 8}, {0, 6, 12}, {0, 7, 14}, {0, 9, 18}, {0, 10, 20}, {0, 15, 30}}) {
    words.push_back(make_codeword(e, 31));
  }
  if (corrupt) words.push_back(make_codeword({0, 1, 2}, 31));
  const auto v = verify_cac(make_code(31, words));
  if (!v.valid) return "conflict at residue " + std::to_string(v.residue);
  return {};
}

std::string check_p31_build(bool corrupt) {
  const auto built = build_optimal_cac(31);
  const size_t expected = corrupt ? 8 : 7;
  if (built.code.codewords.size() != expected) return "size " + std::to_string(built.code.codewords.size());
  if (!verify_cac(built.code).valid) return "built code fails verification";
  return {};
}

std::vector<Check> all_checks() {
  std::vector<Check> checks;
  for (const auto& row : kWitnessRows) {
    checks.push_back({{"witness.ell" + std::to_string(row.ell) + ".q" + std::to_string(row.q),
                       "published solution of g^2 x^" + std::to_string(row.ell) + " + g y^" + std::to_string(row.ell) +
                           " + 1 = 0 over F_" + std::to_string(row.q) + " with g a generator"},
                      [row](bool c) { return check_witness(row, c); }});
  }
  for (auto [ell, b] : std::vector<std::pair<uint64_t, int64_t>>{{5, 34}, {6, 194}, {11, 322}}) {
    checks.push_back({{"bound.ell" + std::to_string(ell), "b(" + std::to_string(ell) + ") = " + std::to_string(b)},
                      [ell, b](bool c) { return check_bound(ell, b, c); }});
  }
  for (auto [q, ell] : std::vector<std::pair<uint64_t, uint64_t>>{{7, 6}, {13, 6}, {23, 11}}) {
    checks.push_back({{"unsolvable.q" + std::to_string(q) + ".ell" + std::to_string(ell),
                       "no generator g of F_" + std::to_string(q) + " admits a solution for ell = " + std::to_string(ell)},
                      [q, ell](bool c) { return check_unsolvable(q, ell, c); }});
  }
  checks.push_back({{"cac.p31.triple", "(2, 3, -5) sums to 0 and meets three cosets of <-1, 2> in F_31"}, check_p31_triple});
  checks.push_back({{"cac.p31.code", "the seven published codewords of length 31 form a conflict-avoiding code"}, check_p31_code});
  checks.push_back({{"cac.p31.build", "the constructed length-31 code has 7 codewords"}, check_p31_build});
  return checks;
}

}  // namespace

std::vector<SelftestEntry> selftest_entries() {
  std::vector<SelftestEntry> out;
  for (const auto& c : all_checks()) out.push_back(c.entry);
  return out;
}

std::vector<SelftestResult> run_selftest(const std::optional<std::string>& corrupt) {
  const auto checks = all_checks();
  if (corrupt) {
    bool known = false;
    for (const auto& c : checks) known = known || c.entry.name == *corrupt;
    if (!known) throw DomainError("selftest: no entry named '" + *corrupt + "'");
  }
  std::vector<SelftestResult> out;
  for (const auto& c : checks) {
    SelftestResult r{c.entry.name, false, {}};
    try {
      r.detail = c.run(corrupt && *corrupt == c.entry.name);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cacforge
