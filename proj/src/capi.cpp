#include "cacforge/cacforge.h"

#include <cstdlib>
#include <cstring>
#include <numeric>
#include <string>
#include <thread>

#include "cacforge/cac.hpp"
#include "cacforge/char_sums.hpp"
#include "cacforge/diagonal.hpp"
#include "cacforge/error.hpp"
#include "cacforge/scan.hpp"
#include "cacforge/selftest.hpp"
#include "cacforge/serialize.hpp"

struct cacforge_field {
  cacforge::FieldPtr ptr;
};

struct cacforge_code {
  cacforge::CacCode code;
  std::optional<cacforge::CacBuild> build;
};

namespace {

using namespace cacforge;

thread_local std::string g_last_error;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Fn>
cacforge_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return CACFORGE_INVALID_ARGUMENT;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return CACFORGE_DOMAIN_ERROR;
  } catch (const VerificationError& e) {
    g_last_error = e.what();
    return CACFORGE_VERIFICATION_FAILED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CACFORGE_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CACFORGE_INTERNAL_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be null");
}

void emit(char** out, const ojson& j) { *out = dup_string(j.dump(2)); }

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

FieldElem parse_generator(const FieldCtx& f, const char* text) {
  const FieldElem g = text ? f.parse(text) : f.generator();
  if (!f.is_generator(g)) throw DomainError("g = " + f.format(g) + " is not a generator of F_" + std::to_string(f.q()));
  return g;
}

}  // namespace

extern "C" {

const char* cacforge_version(void) { return "0.1.0"; }

const char* cacforge_last_error(void) { return g_last_error.c_str(); }

void cacforge_string_free(char* s) { std::free(s); }

cacforge_status cacforge_field_create(uint64_t q, const char* modulus, cacforge_field** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    FieldPtr f;
    if (modulus) {
      const auto pk = prime_power(q);
      if (!pk) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
      Polynomial m = parse_polynomial(modulus);
      if (m.size() != pk->second + 1) {
        throw DomainError("modulus degree " + std::to_string(m.size() - 1) + " does not match q = " + std::to_string(pk->first) +
                          "^" + std::to_string(pk->second));
      }
      f = make_extension_field(pk->first, std::move(m));
    } else {
      f = make_field(q);
    }
    *out = new cacforge_field{std::move(f)};
    return CACFORGE_OK;
  });
}

void cacforge_field_destroy(cacforge_field* field) { delete field; }

cacforge_status cacforge_field_describe(const cacforge_field* field, char** json_out) {
  return guarded([&] {
    need(field, "field");
    need(json_out, "json_out");
    emit(json_out, to_json(*field->ptr));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_field_parse(const cacforge_field* field, const char* text, uint32_t* code_out) {
  return guarded([&] {
    need(field, "field");
    need(text, "text");
    need(code_out, "code_out");
    *code_out = field->ptr->parse(text).code;
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_field_format(const cacforge_field* field, uint32_t code, char** text_out) {
  return guarded([&] {
    need(field, "field");
    need(text_out, "text_out");
    if (!field->ptr->contains(FieldElem{code})) throw DomainError("element code out of range");
    *text_out = dup_string(field->ptr->format(FieldElem{code}));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_solve(const cacforge_field* field, uint64_t ell, int require_nonzero_xy, char** json_out) {
  return guarded([&] {
    need(field, "field");
    need(json_out, "json_out");
    const auto report = solve(field->ptr, ell, require_nonzero_xy != 0);
    emit(json_out, to_json(*field->ptr, report));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_count(const cacforge_field* field, uint64_t ell, const char* g_text, double tolerance,
                               char** json_out) {
  return guarded([&] {
    need(field, "field");
    need(json_out, "json_out");
    const FieldCtx& f = *field->ptr;
    const FieldElem g = parse_generator(f, g_text);
    const DiagonalCounter counter(field->ptr, ell);
    ojson j;
    j["q"] = f.q();
    j["ell"] = ell;
    j["g"] = f.format(g);
    j["n_affine"] = counter.affine(g);
    j["n_at_infinity"] = counter.at_infinity(g);
    j["n_proj"] = counter.projective(g);
    if (ell + 1 < f.q()) {
      const CharacterGroup group(field->ptr, ell);
      const JacobiTable jacobi(group);
      const auto r = count_via_charsum(jacobi, g, tolerance > 0 ? tolerance : kCountTolerance);
      if (static_cast<uint64_t>(r.value) != counter.affine(g)) {
        throw VerificationError("character-sum count " + std::to_string(r.value) + " disagrees with enumeration");
      }
      j["n_charsum"] = r.value;
      j["charsum_residual"] = r.residual;
    } else {
      j["n_charsum"] = nullptr;
      j["charsum_residual"] = nullptr;
    }
    j["zero_coord"] = to_json(f, counter.classify(g));
    emit(json_out, j);
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_count_all(const cacforge_field* field, uint64_t ell, double tolerance, char** json_out) {
  return guarded([&] {
    need(field, "field");
    need(json_out, "json_out");
    const FieldCtx& f = *field->ptr;
    const uint64_t total = aggregate_N(field->ptr, ell);
    const uint64_t reduced = aggregate_N_reduced(field->ptr, ell);
    if (total != reduced) throw VerificationError("aggregate count disagrees with the reduced formula");
    ojson j;
    j["q"] = f.q();
    j["ell"] = ell;
    j["generators"] = euler_phi(f.group_order());
    j["N"] = total;
    j["N_reduced"] = reduced;
    if (ell >= 3) {
      const CharacterGroup group(field->ptr, ell);
      const JacobiTable jacobi(group);
      const auto sub = generator_subsum_via_ramanujan(jacobi, tolerance > 0 ? tolerance : kCountTolerance);
      const uint64_t via = euler_phi(f.group_order()) / euler_phi(ell) * static_cast<uint64_t>(sub.value);
      if (via != total) throw VerificationError("Ramanujan-sum route disagrees with enumeration");
      j["generator_subsum"] = sub.value;
      j["N_ramanujan"] = via;
    } else {
      j["generator_subsum"] = nullptr;
      j["N_ramanujan"] = nullptr;
    }
    emit(json_out, j);
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_check(const cacforge_field* field, uint64_t ell, const char* g_text, const char* x_text,
                               const char* y_text, char** json_out) {
  return guarded([&] {
    need(field, "field");
    need(g_text, "g");
    need(x_text, "x");
    need(y_text, "y");
    need(json_out, "json_out");
    const FieldCtx& f = *field->ptr;
    const FieldElem g = f.parse(g_text), x = f.parse(x_text), y = f.parse(y_text);
    const auto e = static_cast<int64_t>(ell);
    const FieldElem value = f.add(f.add(f.mul(f.mul(g, g), f.pow(x, e)), f.mul(g, f.pow(y, e))), f.one());
    const bool generator = !g.is_zero() && f.is_generator(g);
    ojson j;
    j["q"] = f.q();
    j["ell"] = ell;
    j["g"] = f.format(g);
    j["x"] = f.format(x);
    j["y"] = f.format(y);
    j["value"] = f.format(value);
    j["g_is_generator"] = generator;
    j["holds"] = generator && value.is_zero();
    emit(json_out, j);
    return generator && value.is_zero() ? CACFORGE_OK : CACFORGE_VERIFICATION_FAILED;
  });
}

cacforge_status cacforge_bound(uint64_t ell, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    emit(json_out, to_json(bound_sheet(ell)));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_sizes(uint64_t p, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    emit(json_out, to_json(cac_size_sheet(p)));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_ramanujan(uint64_t n, int64_t m, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    if (n == 0) throw DomainError("ramanujan: n must be positive");
    ojson j;
    j["n"] = n;
    j["m"] = m;
    j["closed_form"] = ramanujan_sum(n, m);
    j["divisor_sum"] = ramanujan_sum_divisor(n, m);
    j["complex_sum"] = ramanujan_sum_oracle(n, m);
    if (j["closed_form"] != j["divisor_sum"] || j["closed_form"] != j["complex_sum"]) {
      throw VerificationError("Ramanujan sum routes disagree");
    }
    emit(json_out, j);
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_cac_build(uint64_t p, cacforge_code** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto built = build_optimal_cac(p);
    *out = new cacforge_code{built.code, std::move(built)};
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_cac_import(const char* json_text, cacforge_code** out) {
  return guarded([&] {
    need(json_text, "json");
    need(out, "out");
    *out = nullptr;
    *out = new cacforge_code{import_cac(json_text), std::nullopt};
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_cac_export(const cacforge_code* code, char** json_out) {
  return guarded([&] {
    need(code, "code");
    need(json_out, "json_out");
    *json_out = dup_string(export_cac(code->code));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_cac_verify(const cacforge_code* code, char** json_out) {
  return guarded([&] {
    need(code, "code");
    need(json_out, "json_out");
    const auto v = verify_cac(code->code);
    ojson j;
    j["n"] = code->code.n;
    j["size"] = code->code.codewords.size();
    j["valid"] = v.valid;
    if (v.valid) {
      j["conflict"] = nullptr;
    } else {
      j["conflict"] = {{"first", code->code.codewords[v.first].elements},
                       {"second", code->code.codewords[v.second].elements},
                       {"residue", v.residue}};
      g_last_error = "codewords share residue " + std::to_string(v.residue);
    }
    emit(json_out, j);
    return v.valid ? CACFORGE_OK : CACFORGE_VERIFICATION_FAILED;
  });
}

cacforge_status cacforge_cac_details(const cacforge_code* code, char** json_out) {
  return guarded([&] {
    need(code, "code");
    need(json_out, "json_out");
    ojson j;
    if (code->build) {
      j["sizes"] = to_json(code->build->sizes);
      j["triples"] = code->build->triples ? to_json(*code->build->triples) : ojson(nullptr);
    } else {
      j["sizes"] = nullptr;
      j["triples"] = nullptr;
    }
    emit(json_out, j);
    return CACFORGE_OK;
  });
}

void cacforge_code_destroy(cacforge_code* code) { delete code; }

cacforge_status cacforge_scan_csv(uint64_t lo, uint64_t hi, uint64_t ell_filter, unsigned jobs, int timing,
                                  char** csv_out) {
  return guarded([&] {
    need(csv_out, "csv_out");
    const auto recs = scan_range(lo, hi, ell_filter ? std::optional<uint64_t>(ell_filter) : std::nullopt, resolve_jobs(jobs));
    *csv_out = dup_string(scan_csv(recs, timing != 0));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_scan_json(uint64_t lo, uint64_t hi, uint64_t ell_filter, unsigned jobs, int timing,
                                   char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    const auto recs = scan_range(lo, hi, ell_filter ? std::optional<uint64_t>(ell_filter) : std::nullopt, resolve_jobs(jobs));
    ojson arr = ojson::array();
    for (const auto& r : recs) arr.push_back(to_json(r, timing != 0));
    emit(json_out, arr);
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_verify_prime(uint64_t p, int timing, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    emit(json_out, to_json(verify_conjecture(p), timing != 0));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_p_ell(uint64_t ell, uint64_t lo, unsigned jobs, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    emit(json_out, to_json(p_ell_set(ell, lo, resolve_jobs(jobs))));
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_fib_roots(uint64_t limit, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    ojson arr = ojson::array();
    for (uint64_t p : fib_prime_sequence(limit)) arr.push_back({{"p", p}, {"roots", fibonacci_primitive_roots(p)}});
    emit(json_out, arr);
    return CACFORGE_OK;
  });
}

cacforge_status cacforge_selftest(const char* corrupt, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    const auto results = run_selftest(corrupt ? std::optional<std::string>(corrupt) : std::nullopt);
    ojson arr = ojson::array();
    size_t failed = 0;
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      if (!r.passed) ++failed;
    }
    emit(json_out, arr);
    if (failed) g_last_error = std::to_string(failed) + " selftest entries failed";
    return failed ? CACFORGE_VERIFICATION_FAILED : CACFORGE_OK;
  });
}

cacforge_status cacforge_selftest_list(char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    ojson arr = ojson::array();
    for (const auto& e : selftest_entries()) arr.push_back({{"name", e.name}, {"description", e.description}});
    emit(json_out, arr);
    return CACFORGE_OK;
  });
}

}  // extern "C"
