#include "cacforge/cac.hpp"

#include <algorithm>
#include <unordered_map>

#include "cacforge/error.hpp"
#include "json.hpp"

namespace cacforge {

using json = nlohmann::ordered_json;

const char* to_string(CodewordKind kind) { return kind == CodewordKind::equi ? "equi" : "nonequi"; }

Codeword make_codeword(std::array<uint64_t, 3> elements, uint64_t n) {
  if (n < 3) throw DomainError("codeword length must be at least 3");
  for (auto& e : elements) e %= n;
  std::sort(elements.begin(), elements.end());
  if (elements[0] == elements[1] || elements[1] == elements[2]) {
    throw DomainError("codeword residues must be distinct mod " + std::to_string(n));
  }
  Codeword w;
  w.elements = elements;
  bool equi = false;
  for (int mid = 0; mid < 3 && !equi; ++mid) {
    const uint64_t a = elements[(mid + 1) % 3], b = elements[(mid + 2) % 3];
    equi = add_mod(a, b, n) == mul_mod(2, elements[mid], n);
  }
  w.kind = equi ? CodewordKind::equi : CodewordKind::nonequi;
  return w;
}

std::vector<uint64_t> difference_set(const Codeword& w, uint64_t n) {
  std::vector<uint64_t> d;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) d.push_back(sub_mod(w.elements[i], w.elements[j], n));
    }
  }
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

CacCode make_code(uint64_t n, std::vector<Codeword> codewords, std::optional<PrimeWitness> witness) {
  CacCode code;
  code.n = n;
  code.witness = witness;
  std::vector<std::pair<uint64_t, Codeword>> keyed;
  keyed.reserve(codewords.size());
  for (const auto& w : codewords) {
    const auto d = difference_set(w, n);
    code.delta_union.insert(code.delta_union.end(), d.begin(), d.end());
    keyed.emplace_back(d.front(), w);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, w] : keyed) code.codewords.push_back(w);
  std::sort(code.delta_union.begin(), code.delta_union.end());
  code.delta_union.erase(std::unique(code.delta_union.begin(), code.delta_union.end()), code.delta_union.end());
  return code;
}

CacVerdict verify_cac(const CacCode& code) {
  std::unordered_map<uint64_t, size_t> owner;
  for (size_t i = 0; i < code.codewords.size(); ++i) {
    for (uint64_t r : difference_set(code.codewords[i], code.n)) {
      const auto [it, inserted] = owner.emplace(r, i);
      if (!inserted) return {false, it->second, i, r};
    }
  }
  return {};
}

TripleWitness derive_triples(uint64_t p, uint64_t g, uint64_t x, uint64_t y) {
  if (p < 5 || !is_prime(p)) throw DomainError("derive_triples: p must be a prime >= 5");
  const auto fac = factorize(p - 1);
  const HIndex hi = h_index(p, fac);
  if (hi.ell0 < 3) throw DomainError("derive_triples: ell0 = " + std::to_string(hi.ell0) + " < 3");
  g %= p, x %= p, y %= p;
  if (g == 0 || !is_primitive_root(g, p, fac)) throw DomainError("derive_triples: g is not a primitive root");
  if (x == 0 || y == 0) throw DomainError("derive_triples: x and y must be nonzero");
  if (!satisfies_diagonal_prime(p, hi.ell0, g, x, y)) throw DomainError("derive_triples: (x, y) is not a solution");

  TripleWitness tw{p, hi.ell0, g, x, y, {}, {}};
  const uint64_t b = mul_mod(g, pow_mod(y, hi.ell0, p), p);
  const uint64_t c = mul_mod(mul_mod(g, g, p), pow_mod(x, hi.ell0, p), p);
  if (add_mod(add_mod(1, b, p), c, p) != 0) throw VerificationError("derive_triples: 1 + b + c != 0");

  const FieldPtr field = make_prime_field(p);
  const SubgroupCtx H = make_subgroup_H(field);
  if (H.index() != hi.ell0) throw VerificationError("derive_triples: subgroup index disagrees with ell0");
  const FieldElem gen{static_cast<uint32_t>(g)};
  const uint64_t g3 = pow_mod(g, 3, p);
  uint64_t scale = 1;
  for (uint64_t i = 1; i <= hi.ell0 / 3; ++i) {
    const std::array<uint64_t, 3> t{scale, mul_mod(scale, b, p), mul_mod(scale, c, p)};
    std::array<uint64_t, 3> lab{};
    for (int k = 0; k < 3; ++k) {
      lab[k] = H.coset_relative_to(FieldElem{static_cast<uint32_t>(t[k])}, gen);
      if (lab[k] != 3 * i - 3 + k) {
        throw VerificationError("derive_triples: element " + std::to_string(t[k]) + " of triple " + std::to_string(i) +
                                " has coset label " + std::to_string(lab[k]));
      }
    }
    tw.triples.push_back(t);
    tw.labels.push_back(lab);
    scale = mul_mod(scale, g3, p);
  }
  return tw;
}

CacBuild build_optimal_cac(uint64_t p) {
  if (p < 5 || !is_prime(p)) throw DomainError("build_optimal_cac: p must be a prime >= 5");
  CacBuild out;
  out.sizes = cac_size_sheet(p);
  const HIndex hi = h_index(p);
  const bool perfect = hi.order_of_two % 4 == 0;
  const uint64_t m = hi.h_order / 2;  // number of {+-a} classes per coset

  const FieldPtr field = make_prime_field(p);
  const SubgroupCtx H = make_subgroup_H(field);
  std::vector<uint64_t> root(hi.ell0, 0);
  std::vector<Codeword> words;
  std::optional<PrimeWitness> witness;

  if (!perfect && hi.ell0 >= 3) {
    const auto w = find_solvable_generator(field, hi.ell0, true);
    if (!w) {
      throw VerificationError("build_optimal_cac: no generator of F_" + std::to_string(p) +
                              " admits a solution with xy != 0 for ell0 = " + std::to_string(hi.ell0) + " (scanned " +
                              std::to_string(generators(*field).size()) + " generators)");
    }
    witness = PrimeWitness{w->g.code, w->x.code, w->y.code};
    out.triples = derive_triples(p, witness->g, witness->x, witness->y);
    for (const auto& t : out.triples->triples) {
      words.push_back(make_codeword({0, t[0], p - t[2]}, p));
      for (uint64_t e : t) root[H.coset_of(FieldElem{static_cast<uint32_t>(e)})] = e;
    }
  }
  uint64_t missing = static_cast<uint64_t>(std::count(root.begin(), root.end(), 0));
  for (uint64_t r = 1; r < p && missing > 0; ++r) {
    auto& slot = root[H.coset_of(FieldElem{static_cast<uint32_t>(r)})];
    if (slot == 0) slot = r, --missing;
  }

  for (uint64_t r : root) {
    // chain r, 2r, 4r, ... through the m classes of rH modulo sign
    std::vector<uint64_t> chain(m + 1);
    chain[0] = r;
    for (uint64_t i = 1; i <= m; ++i) chain[i] = mul_mod(chain[i - 1], 2, p);
    const uint64_t start = perfect ? 0 : 1;
    for (uint64_t i = start; i + 1 < m + start; i += 2) words.push_back(make_codeword({0, chain[i], chain[i + 1]}, p));
  }

  out.code = make_code(p, std::move(words), witness);
  const uint64_t target = perfect ? (p - 1) / 4 : *out.sizes.m_target;
  if (out.code.codewords.size() != target) {
    throw VerificationError("build_optimal_cac: built " + std::to_string(out.code.codewords.size()) +
                            " codewords, expected " + std::to_string(target));
  }
  if (const auto v = verify_cac(out.code); !v.valid) {
    throw VerificationError("build_optimal_cac: conflict at residue " + std::to_string(v.residue));
  }
  return out;
}

std::string export_cac(const CacCode& code) {
  if (const auto v = verify_cac(code); !v.valid) {
    throw VerificationError("refusing to export: codewords " + std::to_string(v.first) + " and " +
                            std::to_string(v.second) + " share residue " + std::to_string(v.residue));
  }
  json doc;
  doc["n"] = code.n;
  doc["size"] = code.codewords.size();
  json words = json::array();
  for (const auto& w : code.codewords) {
    json jw;
    jw["elements"] = w.elements;
    jw["kind"] = to_string(w.kind);
    jw["delta"] = difference_set(w, code.n);
    words.push_back(std::move(jw));
  }
  doc["codewords"] = std::move(words);
  if (code.witness) {
    doc["witness"] = {{"g", code.witness->g}, {"x", code.witness->x}, {"y", code.witness->y}};
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump();
}

namespace {

uint64_t get_uint(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0)) {
    throw DomainError(std::string("cac document: ") + what + " must be a nonnegative integer");
  }
  return j.get<uint64_t>();
}

}  // namespace

CacCode import_cac(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("cac document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("codewords") || !doc["codewords"].is_array()) {
    throw DomainError("cac document: expected an object with \"n\" and \"codewords\"");
  }
  const uint64_t n = get_uint(doc["n"], "n");
  if (n < 3) throw DomainError("cac document: n must be at least 3");
  std::vector<Codeword> words;
  for (const auto& jw : doc["codewords"]) {
    if (!jw.is_object() || !jw.contains("elements") || !jw["elements"].is_array() || jw["elements"].size() != 3) {
      throw DomainError("cac document: each codeword needs three \"elements\"");
    }
    std::array<uint64_t, 3> e{};
    for (int i = 0; i < 3; ++i) {
      e[i] = get_uint(jw["elements"][i], "element");
      if (e[i] >= n) throw DomainError("cac document: element " + std::to_string(e[i]) + " is not reduced mod n");
    }
    const Codeword w = make_codeword(e, n);
    if (jw.contains("kind") && jw["kind"] != to_string(w.kind)) {
      throw DomainError("cac document: codeword kind does not match its elements");
    }
    if (jw.contains("delta") && jw["delta"] != json(difference_set(w, n))) {
      throw DomainError("cac document: recorded delta does not match its elements");
    }
    words.push_back(w);
  }
  if (doc.contains("size") && get_uint(doc["size"], "size") != words.size()) {
    throw DomainError("cac document: \"size\" does not match the number of codewords");
  }
  std::optional<PrimeWitness> witness;
  if (doc.contains("witness") && !doc["witness"].is_null()) {
    const auto& jw = doc["witness"];
    if (!jw.is_object() || !jw.contains("g") || !jw.contains("x") || !jw.contains("y")) {
      throw DomainError("cac document: witness must have g, x, y");
    }
    witness = PrimeWitness{get_uint(jw["g"], "g"), get_uint(jw["x"], "x"), get_uint(jw["y"], "y")};
  }
  return make_code(n, std::move(words), witness);
}

}  // namespace cacforge
