#pragma once

// Embedded table of published witnesses, thresholds and counterexamples,
// re-checked against the library on demand.

#include <optional>
#include <string>
#include <vector>

namespace cacforge {

struct SelftestEntry {
  std::string name;
  std::string description;
};

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelftestEntry> selftest_entries();

// Runs every entry. `corrupt` names an entry whose expected data is perturbed
// before checking, so that entry must fail; DomainError if no such entry.
std::vector<SelftestResult> run_selftest(const std::optional<std::string>& corrupt = {});

}  // namespace cacforge
