// Acceptance battery: one PASS/FAIL line per criterion, runtime budgets included.

#include <chrono>
#include <cstdio>
#include <map>

#include "fracperim/suite.hpp"

using namespace fracperim;

int main() {
  // Wall-clock budgets in seconds; criteria without one are unbounded.
  const std::map<int, double> budget{{1, 10.0}, {2, 60.0}, {3, 300.0}, {7, 300.0}, {10, 600.0}};

  SuiteConfig cfg;
  std::map<int, double> elapsed;
  auto last = std::chrono::steady_clock::now();
  const SuiteResult res = run_suite(cfg, [&](const CriterionResult& r) {
    const auto now = std::chrono::steady_clock::now();
    elapsed[r.id] = std::chrono::duration<double>(now - last).count();
    last = now;
  });

  bool all = res.results.size() == static_cast<std::size_t>(kCriterionCount);
  for (const auto& r : res.results) {
    const double t = elapsed[r.id];
    const auto b = budget.find(r.id);
    const bool in_time = b == budget.end() || t < b->second;
    const bool pass = r.pass && in_time;
    all = all && pass;
    std::printf("%s %2d %-62s %7.2fs  %s%s\n", pass ? "PASS" : "FAIL", r.id, r.title.c_str(), t, r.summary.c_str(),
                in_time ? "" : " [over time budget]");
  }
  std::printf("%s: %zu criteria\n", all ? "ALL PASS" : "FAILURES", res.results.size());
  return all ? 0 : 1;
}
