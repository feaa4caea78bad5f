// Command-line front end over the cacforge C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cacforge/cacforge.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 64;

enum class Format { natural, json, csv, table };

struct Options {
  Format format = Format::natural;
  unsigned jobs = 0;
};

// Thrown to unwind with a status after the diagnostic has been printed.
struct Exit {
  int code;
};

int exit_code(cacforge_status s) {
  switch (s) {
    case CACFORGE_OK: return 0;
    case CACFORGE_VERIFICATION_FAILED: return 2;
    default: return 1;
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "error: " << one_line(message) << '\n';
  throw Exit{code};
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  cacforge_string_free(s);
  return out;
}

// Returns the library's output; on failure prints the diagnostic and exits,
// unless `keep_output_on_verification` lets the caller print the output first.
std::string call(cacforge_status s, char*& out, bool keep_output_on_verification = false) {
  std::string text = take(out);
  out = nullptr;
  if (s == CACFORGE_OK) return text;
  if (s == CACFORGE_VERIFICATION_FAILED && keep_output_on_verification) return text;
  fail(exit_code(s), cacforge_last_error());
}

class Field {
 public:
  Field(uint64_t q, const std::string& modulus) {
    const cacforge_status s = cacforge_field_create(q, modulus.empty() ? nullptr : modulus.c_str(), &ptr_);
    if (s != CACFORGE_OK) fail(exit_code(s), cacforge_last_error());
  }
  ~Field() { cacforge_field_destroy(ptr_); }
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
  const cacforge_field* get() const { return ptr_; }

 private:
  cacforge_field* ptr_ = nullptr;
};

class Code {
 public:
  explicit Code(cacforge_code* ptr) : ptr_(ptr) {}
  ~Code() { cacforge_code_destroy(ptr_); }
  Code(const Code&) = delete;
  Code& operator=(const Code&) = delete;
  const cacforge_code* get() const { return ptr_; }

 private:
  cacforge_code* ptr_;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

json as_rows(const json& doc) { return doc.is_array() ? doc : json::array({doc}); }

void print_csv(const json& doc) {
  const json rows = as_rows(doc);
  if (rows.empty()) return;
  std::string line;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) line += (line.empty() ? "" : ",") + it.key();
  std::cout << line << '\n';
  for (const auto& row : rows) {
    line.clear();
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
      line += (first ? "" : ",") + csv_cell(row.contains(it.key()) ? row[it.key()] : json());
      first = false;
    }
    std::cout << line << '\n';
  }
}

void print_table(const json& doc) {
  if (doc.is_object()) {
    size_t width = 0;
    for (auto it = doc.begin(); it != doc.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      std::cout << it.key() << std::string(width - it.key().size() + 2, ' ') << scalar_text(it.value()) << '\n';
    }
    return;
  }
  const json rows = as_rows(doc);
  if (rows.empty()) return;
  if (!rows[0].is_object()) {
    for (const auto& v : rows) std::cout << scalar_text(v) << '\n';
    return;
  }
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  std::vector<size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& row : rows) {
    for (size_t i = 0; i < keys.size(); ++i) width[i] = std::max(width[i], scalar_text(row[keys[i]]).size());
  }
  auto emit_row = [&](auto cell) {
    std::string line;
    for (size_t i = 0; i < keys.size(); ++i) {
      const std::string s = cell(i);
      line += s;
      if (i + 1 < keys.size()) line += std::string(width[i] - s.size() + 2, ' ');
    }
    std::cout << line << '\n';
  };
  emit_row([&](size_t i) { return keys[i]; });
  for (const auto& row : rows) emit_row([&](size_t i) { return scalar_text(row[keys[i]]); });
}

void print_doc(const json& doc, Format format) {
  switch (format) {
    case Format::csv: print_csv(doc); break;
    case Format::table: print_table(doc); break;
    default: std::cout << doc.dump(2) << '\n'; break;
  }
}

void print_json_text(const std::string& text, Format format) {
  if (format == Format::natural || format == Format::json) {
    std::cout << text << '\n';
    return;
  }
  print_doc(json::parse(text), format);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(1, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(1, "cannot write " + path);
  out << text;
  if (!out.flush()) fail(1, "cannot write " + path);
}

// Adds "method" and "N" to a count report; "brute" drops the character-sum
// fields, "charsum" requires them.
std::string select_method(const std::string& text, const std::string& method) {
  json j = json::parse(text);
  if (method == "charsum" && j["n_charsum"].is_null()) {
    fail(1, "character sums need ell to be a proper divisor of q-1 with ell + 1 < q");
  }
  if (method == "brute") {
    j.erase("n_charsum");
    j.erase("charsum_residual");
  }
  j["method"] = method;
  j["N"] = method == "charsum" ? j["n_charsum"] : j["n_affine"];
  return j.dump();
}

std::optional<unsigned> jobs_from_env() {
  const char* env = std::getenv("CACFORGE_JOBS");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 4096) fail(kExitUsage, std::string("CACFORGE_JOBS must be a positive integer, got '") + env + "'");
  return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal equations over finite fields and optimal conflict-avoiding codes", "cacforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cacforge_version()));

  Options opt;
  std::string format_name;
  unsigned jobs_flag = 0;
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--jobs", jobs_flag, "Worker threads (default: CACFORGE_JOBS or one per core)")->check(CLI::Range(1u, 4096u));

  uint64_t q = 0, ell = 0, p = 0, n = 0, lo = 0, hi = 0, limit = 0;
  int64_t m = 0;
  std::string modulus, g_text, x_text, y_text, out_path, file_path, corrupt, method = "both";
  bool nonzero = false, all = false, details = false, no_timing = false, list = false;
  double tolerance = 0.0;

  auto* field_cmd = app.add_subcommand("field", "Describe F_q: modulus and reference generator");
  field_cmd->add_option("--q", q, "Field order (prime power)")->required();
  field_cmd->add_option("--modulus", modulus, "Modulus coefficients c0,c1,...,1");

  auto* solve_cmd = app.add_subcommand("solve", "Find a generator g with g^2 x^ell + g y^ell + 1 = 0 solvable");
  solve_cmd->add_option("--q", q, "Field order (prime power)")->required();
  solve_cmd->add_option("--ell", ell, "Exponent, a proper divisor of q-1")->required();
  solve_cmd->add_option("--modulus", modulus, "Modulus coefficients c0,c1,...,1");
  solve_cmd->add_flag("--nonzero,--require-nonzero-xy", nonzero, "Require x y != 0");

  auto* count_cmd = app.add_subcommand("count", "Count points on g^2 X^ell + g Y^ell + 1 = 0");
  count_cmd->add_option("--q", q, "Field order (prime power)")->required();
  count_cmd->add_option("--ell", ell, "Exponent dividing q-1")->required();
  count_cmd->add_option("--modulus", modulus, "Modulus coefficients c0,c1,...,1");
  count_cmd->add_option("--g", g_text, "Generator (default: the reference generator)");
  count_cmd->add_flag("--all", all, "Sum over all generators");
  count_cmd->add_option("--method", method, "Counting route to report")
      ->check(CLI::IsMember({"brute", "charsum", "both"}))
      ->capture_default_str();
  count_cmd->add_option("--tolerance", tolerance, "Rounding tolerance for character sums")->check(CLI::PositiveNumber);

  auto* check_cmd = app.add_subcommand("check", "Substitute (g, x, y) and test that g generates F_q^x");
  check_cmd->add_option("--q", q, "Field order (prime power)")->required();
  check_cmd->add_option("--ell", ell, "Exponent")->required();
  check_cmd->add_option("--modulus", modulus, "Modulus coefficients c0,c1,...,1");
  check_cmd->add_option("--g", g_text, "g")->required();
  check_cmd->add_option("--x", x_text, "x")->required();
  check_cmd->add_option("--y", y_text, "y")->required();

  auto* bound_cmd = app.add_subcommand("bound", "Solvability threshold b(ell) and related quantities");
  bound_cmd->add_option("--ell", ell, "Exponent")->required();

  auto* sizes_cmd = app.add_subcommand("sizes", "Size bounds for weight-3 CACs of prime length p");
  sizes_cmd->add_option("--p", p, "Prime length >= 5")->required();

  auto* ram_cmd = app.add_subcommand("ramanujan", "Ramanujan sum c_n(m) by three routes");
  ram_cmd->add_option("--n", n, "n >= 1")->required();
  ram_cmd->add_option("--m", m, "m")->required();

  auto* cac_cmd = app.add_subcommand("cac", "Conflict-avoiding codes");
  cac_cmd->require_subcommand(1);
  auto* cac_build = cac_cmd->add_subcommand("build", "Build an optimal weight-3 CAC of prime length p");
  cac_build->add_option("--p", p, "Prime length >= 5")->required();
  cac_build->add_option("--out", out_path, "Write the code JSON here instead of stdout");
  cac_build->add_flag("--details", details, "Also report the size sheet and triple witness");
  auto* cac_verify = cac_cmd->add_subcommand("verify", "Check that difference sets are pairwise disjoint");
  cac_verify->add_option("--file", file_path, "Code JSON")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Verify the generator conjecture over a prime range");
  scan_cmd->add_option("--lo", lo, "Lower end (inclusive)")->required();
  scan_cmd->add_option("--hi", hi, "Upper end (inclusive)")->required();
  scan_cmd->add_option("--ell", ell, "Only primes with this index of <-1, 2>");
  scan_cmd->add_option("--out", out_path, "Write the CSV report here");
  scan_cmd->add_flag("--no-timing", no_timing, "Write 0 in the ms column");

  auto* pell_cmd = app.add_subcommand("pell", "Primes lo < p < b(ell) whose index of <-1, 2> is ell");
  pell_cmd->add_option("--ell", ell, "Index, >= 3")->required();
  pell_cmd->add_option("--lo", lo, "Scan floor")->default_val(2);

  auto* fib_cmd = app.add_subcommand("fib-roots", "Primes up to a limit with a Fibonacci primitive root");
  fib_cmd->add_option("--limit", limit, "Largest prime considered")->required();

  auto* self_cmd = app.add_subcommand("selftest", "Re-check the embedded table of published values");
  self_cmd->add_flag("--list", list, "List the checks without running them");
  self_cmd->add_option("--corrupt", corrupt, "Perturb the named entry (negative test)");

  auto* version_cmd = app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << app.help();
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (format_name == "json") opt.format = Format::json;
    if (format_name == "csv") opt.format = Format::csv;
    if (format_name == "table") opt.format = Format::table;
    opt.jobs = jobs_flag ? jobs_flag : jobs_from_env().value_or(0);
    char* out = nullptr;

    if (*field_cmd) {
      Field f(q, modulus);
      print_json_text(call(cacforge_field_describe(f.get(), &out), out), opt.format);
    } else if (*solve_cmd) {
      Field f(q, modulus);
      print_json_text(call(cacforge_solve(f.get(), ell, nonzero ? 1 : 0, &out), out), opt.format);
    } else if (*count_cmd) {
      Field f(q, modulus);
      if (all) {
        if (!g_text.empty()) fail(kExitUsage, "--all and --g are mutually exclusive");
        print_json_text(call(cacforge_count_all(f.get(), ell, tolerance, &out), out), opt.format);
      } else {
        const char* g = g_text.empty() ? nullptr : g_text.c_str();
        print_json_text(select_method(call(cacforge_count(f.get(), ell, g, tolerance, &out), out), method),
                        opt.format);
      }
    } else if (*check_cmd) {
      Field f(q, modulus);
      const cacforge_status s =
          cacforge_check(f.get(), ell, g_text.c_str(), x_text.c_str(), y_text.c_str(), &out);
      print_json_text(call(s, out, true), opt.format);
      if (s != CACFORGE_OK) fail(2, "(g, x, y) is not a solution with g a generator");
    } else if (*bound_cmd) {
      print_json_text(call(cacforge_bound(ell, &out), out), opt.format);
    } else if (*sizes_cmd) {
      print_json_text(call(cacforge_sizes(p, &out), out), opt.format);
    } else if (*ram_cmd) {
      print_json_text(call(cacforge_ramanujan(n, m, &out), out), opt.format);
    } else if (*cac_build) {
      cacforge_code* raw = nullptr;
      const cacforge_status s = cacforge_cac_build(p, &raw);
      if (s != CACFORGE_OK) fail(exit_code(s), cacforge_last_error());
      Code code(raw);
      const std::string text = call(cacforge_cac_export(code.get(), &out), out);
      json doc = json::parse(text);
      if (details) {
        const json extra = json::parse(call(cacforge_cac_details(code.get(), &out), out));
        doc = json{{"code", doc}, {"sizes", extra["sizes"]}, {"triples", extra["triples"]}};
      }
      if (!out_path.empty()) {
        write_file(out_path, text + "\n");
        if (details) print_doc(json{{"sizes", doc["sizes"]}, {"triples", doc["triples"]}}, opt.format);
      } else if (opt.format == Format::csv || opt.format == Format::table) {
        print_doc(details ? doc["code"]["codewords"] : doc["codewords"], opt.format);
      } else {
        std::cout << (details ? doc.dump() : text) << '\n';
      }
    } else if (*cac_verify) {
      const std::string text = read_file(file_path);
      cacforge_code* raw = nullptr;
      const cacforge_status s = cacforge_cac_import(text.c_str(), &raw);
      if (s != CACFORGE_OK) fail(exit_code(s), cacforge_last_error());
      Code code(raw);
      const cacforge_status vs = cacforge_cac_verify(code.get(), &out);
      const std::string error = cacforge_last_error();
      print_json_text(call(vs, out, true), opt.format);
      if (vs != CACFORGE_OK) fail(exit_code(vs), error);
    } else if (*scan_cmd) {
      const uint64_t filter = scan_cmd->count("--ell") ? ell : 0;
      if (scan_cmd->count("--ell") && ell == 0) fail(1, "--ell must be positive");
      const int timing = no_timing ? 0 : 1;
      size_t failed = 0;
      if (!out_path.empty() || opt.format == Format::natural || opt.format == Format::csv) {
        const std::string csv = call(cacforge_scan_csv(lo, hi, filter, opt.jobs, timing, &out), out);
        std::istringstream lines(csv);
        std::string line;
        json summary{{"lo", lo}, {"hi", hi}, {"ell", filter ? json(filter) : json()}, {"records", 0},
                     {"holds", 0}, {"vacuous", 0}, {"covered_by_bound", 0}, {"failed", 0}};
        std::getline(lines, line);
        while (std::getline(lines, line)) {
          const size_t a = line.find(',');
          const size_t b = line.find(',', a + 1);
          const size_t c = line.find(',', b + 1);
          const std::string verdict = line.substr(b + 1, c - b - 1);
          summary["records"] = summary["records"].get<uint64_t>() + 1;
          summary[verdict] = summary[verdict].get<uint64_t>() + 1;
        }
        failed = summary["failed"].get<size_t>();
        if (!out_path.empty()) {
          write_file(out_path, csv);
          print_doc(summary, opt.format == Format::natural ? Format::json : opt.format);
        } else {
          std::cout << csv;
        }
      } else {
        const json recs = json::parse(call(cacforge_scan_json(lo, hi, filter, opt.jobs, timing, &out), out));
        for (const auto& r : recs) failed += r["verdict"] == "failed" ? 1 : 0;
        print_doc(recs, opt.format);
      }
      if (failed) fail(2, std::to_string(failed) + " primes without a witness");
    } else if (*pell_cmd) {
      print_json_text(call(cacforge_p_ell(ell, lo, opt.jobs, &out), out), opt.format);
    } else if (*fib_cmd) {
      const std::string text = call(cacforge_fib_roots(limit, &out), out);
      if (opt.format == Format::natural) {
        for (const auto& e : json::parse(text)) std::cout << e["p"].get<uint64_t>() << '\n';
      } else {
        print_json_text(text, opt.format);
      }
    } else if (*self_cmd) {
      if (list) {
        const std::string text = call(cacforge_selftest_list(&out), out);
        if (opt.format == Format::natural) {
          for (const auto& e : json::parse(text)) {
            std::cout << e["name"].get<std::string>() << "  " << e["description"].get<std::string>() << '\n';
          }
        } else {
          print_json_text(text, opt.format);
        }
      } else {
        const cacforge_status s = cacforge_selftest(corrupt.empty() ? nullptr : corrupt.c_str(), &out);
        const std::string error = cacforge_last_error();
        const std::string text = call(s, out, true);
        const json results = json::parse(text);
        if (opt.format == Format::natural) {
          size_t passed = 0;
          for (const auto& r : results) {
            const bool ok = r["passed"].get<bool>();
            passed += ok ? 1 : 0;
            std::cout << (ok ? "PASS " : "FAIL ") << r["name"].get<std::string>();
            if (!ok) std::cout << ": " << r["detail"].get<std::string>();
            std::cout << '\n';
          }
          std::cout << passed << "/" << results.size() << " passed\n";
        } else {
          print_doc(results, opt.format);
        }
        if (s != CACFORGE_OK) fail(exit_code(s), error);
      }
    } else if (*version_cmd) {
      std::cout << cacforge_version() << '\n';
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
