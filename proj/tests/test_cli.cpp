// Runs the built command-line tool and checks output, exit codes and diagnostics.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("cacforge_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = env + " '" CACFORGE_CLI "' " + args + " 2>'" + err_path.string() + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

bool single_error_line(const std::string& err) {
  const auto last = err.rfind("error: ");
  return last != std::string::npos && err.find('\n', last) == err.size() - 1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bound, sizes, ramanujan") {
  const auto b = run("bound --ell 6");
  CHECK(b.rc == 0);
  CHECK(json::parse(b.out)["b"] == 194);
  const auto s = run("sizes --p 31 --format json");
  CHECK(s.rc == 0);
  CHECK(json::parse(s.out)["m_target"] == 7);
  const auto r = run("ramanujan --n 6 --m 2");
  CHECK(json::parse(r.out)["closed_form"] == -1);
}

TEST_CASE("solve and count") {
  const auto w = run("solve --q 16 --ell 5 --require-nonzero-xy");
  CHECK(w.rc == 0);
  CHECK(!json::parse(w.out)["witness"].is_null());
  const auto none = run("solve --q 13 --ell 6");
  CHECK(none.rc == 0);
  CHECK(json::parse(none.out)["witness"].is_null());
  const auto c = run("count --q 11 --ell 5 --g 7 --method both");
  CHECK(c.rc == 0);
  const auto cj = json::parse(c.out);
  CHECK(cj["N"] == cj["n_charsum"]);
  CHECK(cj["method"] == "both");
  const auto all = run("count --q 23 --ell 11 --all");
  CHECK(json::parse(all.out)["N"] == 0);
}

TEST_CASE("check reports verification failure with exit 2") {
  CHECK(run("check --q 109 --ell 6 --g 6 --x 16 --y 26").rc == 0);
  const auto bad = run("check --q 109 --ell 6 --g 6 --x 16 --y 27");
  CHECK(bad.rc == 2);
  CHECK(single_error_line(bad.err));
  const auto f9 = run("check --q 9 --ell 4 --g 1+a --x 1+a --y 1+a");
  CHECK((f9.rc == 0 || f9.rc == 2));
}

TEST_CASE("domain errors exit 1 with a single diagnostic line") {
  for (const char* args : {"solve --q 12 --ell 1", "solve --q 7 --ell 6", "sizes --p 21", "count --q 9 --ell 4 --g 1+b"}) {
    const auto r = run(args);
    CHECK(r.rc == 1);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(single_error_line(r.err));
  }
}

TEST_CASE("usage errors exit 64") {
  CHECK(run("").rc == 64);
  CHECK(run("bound").rc == 64);
  CHECK(run("frobnicate").rc == 64);
  CHECK(run("bound --ell 5 --format xml").rc == 64);
  const auto env = run("bound --ell 5", "CACFORGE_JOBS=zero");
  CHECK(env.rc == 64);
  CHECK(env.err.find("error: ") != std::string::npos);
}

TEST_CASE("cac build and verify through files") {
  const auto dir = scratch();
  const auto path = dir / "c31.json";
  const auto b = run("cac build --p 31 --out '" + path.string() + "'");
  CHECK(b.rc == 0);
  CHECK(json::parse(slurp(path))["size"] == 7);
  const auto v = run("cac verify --file '" + path.string() + "'");
  CHECK(v.rc == 0);
  CHECK(json::parse(v.out)["valid"] == true);

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"n":11,"size":2,"codewords":[{"elements":[0,1,2],"kind":"equi","delta":[1,2,9,10]},)"
                        R"({"elements":[0,2,4],"kind":"equi","delta":[2,4,7,9]}],"witness":null})";
  const auto vb = run("cac verify --file '" + bad.string() + "'");
  CHECK(vb.rc == 2);
  CHECK(json::parse(vb.out)["valid"] == false);

  const auto missing = run("cac verify --file '" + (dir / "nope.json").string() + "'");
  CHECK(missing.rc == 1);
  CHECK(single_error_line(missing.err));
}

TEST_CASE("scan output is byte-stable without timing") {
  const auto a = run("scan --lo 3 --hi 5000 --no-timing --jobs 1");
  const auto b = run("scan --lo 3 --hi 5000 --no-timing --jobs 3");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("p,ell0,verdict,g,x,y,ms\n", 0) == 0);
  CHECK(a.out.find("\n31,3,holds,") != std::string::npos);
  CHECK(run("cac build --p 127").out == run("cac build --p 127").out);
}

TEST_CASE("selftest, fib-roots, pell, version") {
  const auto s = run("selftest");
  CHECK(s.rc == 0);
  CHECK(s.out.find("45/45 passed") != std::string::npos);
  const auto c = run("selftest --corrupt witness.ell6.q109");
  CHECK(c.rc == 2);
  CHECK(c.out.find("FAIL witness.ell6.q109") != std::string::npos);
  CHECK(run("fib-roots --limit 109").out == "5\n11\n19\n31\n41\n59\n61\n71\n79\n109\n");
  CHECK(json::parse(run("pell --ell 10").out)["primes"] == json::array({241, 641}));
  CHECK(run("version").out == "0.1.0\n");
}

}  // TEST_SUITE
