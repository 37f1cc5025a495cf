// Acceptance criteria runner: `acceptance --criterion N` (N = 1..11) or all
// criteria when no argument is given. One line per criterion, then the
// individual checks indented below it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "qcmi/suites.hpp"

namespace {

using namespace qcmi;

struct Criterion {
  int id;
  const char* title;
  double seconds;  // runtime limit
  std::vector<SuiteReport (*)(const SuiteOptions&)> suites;
  std::vector<std::size_t> pick;  // check indices to keep; empty keeps all
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "worked example, exact values", 1.0, {example_suite}, {0, 1}},
      {2, "worked example, closed form", 1.0, {example_suite}, {2, 3}},
      {3, "discord decomposition of the worked example", 60.0, {example_discord_suite}, {}},
      {4, "identity battery", 60.0, {identity_suite}, {}},
      {5, "property battery", 120.0, {property_suite}, {}},
      {6, "broadcasting battery", 60.0, {broadcast_suite}, {}},
      {7, "recovery map", 30.0, {recovery_suite}, {}},
      {8, "Koashi-Winter", 120.0, {koashi_winter_suite}, {}},
      {9, "generalized monogamy", 120.0, {generalized_monogamy_suite}, {}},
      {10, "r_ex properties", 180.0, {rex_suite}, {}},
      {11, "optimizer oracle equivalence", 60.0, {discord_oracle_suite}, {}},
  };
  return list;
}

bool run(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SuiteCheck> checks;
  for (auto suite : c.suites) {
    const SuiteReport rep = suite(SuiteOptions{});
    if (c.pick.empty()) {
      checks.insert(checks.end(), rep.checks.begin(), rep.checks.end());
    } else {
      for (auto i : c.pick) checks.push_back(rep.checks.at(i));
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  checks.push_back(check_le("runtime (s)", elapsed, c.seconds));

  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.passed;
  std::printf("criterion %d: %s - %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, elapsed);
  for (const auto& ch : checks)
    std::printf("    [%s] %s: %.6g (tolerance %.3g)%s%s\n", ch.passed ? "pass" : "FAIL", ch.name.c_str(), ch.measured,
                ch.tolerance, ch.detail.empty() ? "" : " - ", ch.detail.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  bool ok = true, found = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    found = true;
    ok = run(c) && ok;
  }
  if (!found) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return ok ? 0 : 1;
}
