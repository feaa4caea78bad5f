// Exercises the shared library through its C header only.

#include <doctest.h>

#include <string>

#include "cacforge/cacforge.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

json take_json(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  cacforge_string_free(s);
  return j;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and field lifecycle") {
  CHECK(std::string(cacforge_version()) == "0.1.0");
  cacforge_field* f = nullptr;
  REQUIRE(cacforge_field_create(9, nullptr, &f) == CACFORGE_OK);
  char* out = nullptr;
  REQUIRE(cacforge_field_describe(f, &out) == CACFORGE_OK);
  const auto d = take_json(out);
  CHECK(d["q"] == 9);
  CHECK(d["modulus_coeffs"] == json::array({1, 0, 1}));

  uint32_t code = 0;
  REQUIRE(cacforge_field_parse(f, "1+a", &code) == CACFORGE_OK);
  CHECK(code == 4);
  REQUIRE(cacforge_field_format(f, code, &out) == CACFORGE_OK);
  CHECK(std::string(out) == "1+1*a");
  cacforge_string_free(out);
  CHECK(cacforge_field_parse(f, "1+b", &code) == CACFORGE_DOMAIN_ERROR);
  CHECK(std::string(cacforge_last_error()).size() > 0);
  cacforge_field_destroy(f);
}

TEST_CASE("argument and domain errors") {
  cacforge_field* f = nullptr;
  CHECK(cacforge_field_create(12, nullptr, &f) == CACFORGE_DOMAIN_ERROR);
  CHECK(f == nullptr);
  CHECK(cacforge_field_create(25, "1,0,1", &f) == CACFORGE_DOMAIN_ERROR);
  CHECK(cacforge_field_create(7, nullptr, nullptr) == CACFORGE_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(cacforge_bound(5, nullptr) == CACFORGE_INVALID_ARGUMENT);
  CHECK(cacforge_solve(nullptr, 3, 0, &out) == CACFORGE_INVALID_ARGUMENT);
  CHECK(cacforge_sizes(21, &out) == CACFORGE_DOMAIN_ERROR);
  cacforge_field_destroy(nullptr);
  cacforge_code_destroy(nullptr);
  cacforge_string_free(nullptr);
}

TEST_CASE("solve, count and check") {
  cacforge_field* f = nullptr;
  REQUIRE(cacforge_field_create(109, nullptr, &f) == CACFORGE_OK);
  char* out = nullptr;
  REQUIRE(cacforge_solve(f, 6, 1, &out) == CACFORGE_OK);
  const auto s = take_json(out);
  CHECK(s["witness"]["g"] == "6");
  REQUIRE(cacforge_check(f, 6, "6", "16", "26", &out) == CACFORGE_OK);
  CHECK(take_json(out)["holds"] == true);
  CHECK(cacforge_check(f, 6, "6", "16", "27", &out) == CACFORGE_VERIFICATION_FAILED);
  take_json(out);
  REQUIRE(cacforge_count(f, 6, "6", 0.0, &out) == CACFORGE_OK);
  const auto c = take_json(out);
  CHECK(c["n_affine"] == c["n_charsum"]);
  CHECK(cacforge_solve(f, 108, 0, &out) == CACFORGE_DOMAIN_ERROR);
  cacforge_field_destroy(f);

  REQUIRE(cacforge_field_create(13, nullptr, &f) == CACFORGE_OK);
  REQUIRE(cacforge_solve(f, 6, 0, &out) == CACFORGE_OK);
  CHECK(take_json(out)["witness"].is_null());
  REQUIRE(cacforge_count_all(f, 6, 0.0, &out) == CACFORGE_OK);
  CHECK(take_json(out)["N"] == 0);
  cacforge_field_destroy(f);
}

TEST_CASE("numbers") {
  char* out = nullptr;
  REQUIRE(cacforge_bound(6, &out) == CACFORGE_OK);
  CHECK(take_json(out)["b"] == 194);
  REQUIRE(cacforge_sizes(31, &out) == CACFORGE_OK);
  CHECK(take_json(out)["m_target"] == 7);
  REQUIRE(cacforge_ramanujan(12, 8, &out) == CACFORGE_OK);
  const auto r = take_json(out);
  CHECK(r["closed_form"] == -2);
  CHECK(r["divisor_sum"] == -2);
  CHECK(r["complex_sum"] == -2);
}

TEST_CASE("codes") {
  cacforge_code* c = nullptr;
  REQUIRE(cacforge_cac_build(31, &c) == CACFORGE_OK);
  char* out = nullptr;
  REQUIRE(cacforge_cac_export(c, &out) == CACFORGE_OK);
  const std::string text = out;
  cacforge_string_free(out);
  CHECK(json::parse(text)["size"] == 7);
  REQUIRE(cacforge_cac_details(c, &out) == CACFORGE_OK);
  CHECK(!take_json(out)["triples"].is_null());

  cacforge_code* back = nullptr;
  REQUIRE(cacforge_cac_import(text.c_str(), &back) == CACFORGE_OK);
  REQUIRE(cacforge_cac_export(back, &out) == CACFORGE_OK);
  CHECK(text == out);
  cacforge_string_free(out);
  REQUIRE(cacforge_cac_verify(back, &out) == CACFORGE_OK);
  CHECK(take_json(out)["valid"] == true);
  cacforge_code_destroy(back);
  cacforge_code_destroy(c);

  const char* bad =
      R"({"n":11,"size":2,"codewords":[{"elements":[0,1,2],"kind":"equi","delta":[1,2,9,10]},)"
      R"({"elements":[0,2,4],"kind":"equi","delta":[2,4,7,9]}],"witness":null})";
  REQUIRE(cacforge_cac_import(bad, &c) == CACFORGE_OK);
  CHECK(cacforge_cac_verify(c, &out) == CACFORGE_VERIFICATION_FAILED);
  CHECK(take_json(out)["valid"] == false);
  CHECK(cacforge_cac_export(c, &out) == CACFORGE_VERIFICATION_FAILED);
  cacforge_code_destroy(c);
  CHECK(cacforge_cac_import("{", &c) == CACFORGE_DOMAIN_ERROR);
}

TEST_CASE("scanning") {
  char* out = nullptr;
  REQUIRE(cacforge_scan_csv(5, 50, 0, 2, 0, &out) == CACFORGE_OK);
  const std::string csv = out;
  cacforge_string_free(out);
  CHECK(csv.rfind("p,ell0,verdict,g,x,y,ms\n", 0) == 0);
  CHECK(csv.find("\n31,3,holds,") != std::string::npos);
  REQUIRE(cacforge_verify_prime(127, 0, &out) == CACFORGE_OK);
  CHECK(take_json(out)["verdict"] == "holds");
  REQUIRE(cacforge_p_ell(9, 2, 1, &out) == CACFORGE_OK);
  CHECK(take_json(out)["primes"] == json::array({127}));
  REQUIRE(cacforge_fib_roots(12, &out) == CACFORGE_OK);
  const auto fib = take_json(out);
  REQUIRE(fib.size() == 2);
  CHECK(fib[0]["p"] == 5);
  CHECK(fib[0]["roots"] == json::array({3}));
  CHECK(fib[1]["p"] == 11);
}

TEST_CASE("selftest") {
  char* out = nullptr;
  REQUIRE(cacforge_selftest(nullptr, &out) == CACFORGE_OK);
  const auto all = take_json(out);
  CHECK(all.size() == 45);
  for (const auto& r : all) CHECK(r["passed"] == true);
  CHECK(cacforge_selftest("cac.p31.code", &out) == CACFORGE_VERIFICATION_FAILED);
  take_json(out);
  CHECK(cacforge_selftest("no.such.entry", &out) == CACFORGE_DOMAIN_ERROR);
}

}  // TEST_SUITE
