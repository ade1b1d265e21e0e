// One PASS/FAIL line per acceptance criterion, in registry order.
// Usage: acceptance [--jobs N] [--only NAME]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "cornerlab/parallel.hpp"
#include "cornerlab/suites.hpp"

using namespace cornerlab;

namespace {

std::string failing_rows(const Report& r) {
  std::string out;
  int shown = 0;
  for (const auto& row : r.rows) {
    if (!row.asserted || row.pass) continue;
    if (shown++ == 3) {
      out += "; ...";
      break;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s[%s] value=%.4g threshold=%.4g", out.empty() ? "" : "; ",
                  row.check.c_str(), row.label.c_str(), row.value, row.threshold);
    out += buf;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = default_jobs();
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc)
      jobs = std::max(1, std::atoi(argv[++i]));
    else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
      only = argv[++i];
    else {
      std::fprintf(stderr, "usage: %s [--jobs N] [--only NAME]\n", argv[0]);
      return 2;
    }
  }

  int failures = 0;
  int index = 0;
  for (const Suite& s : suite_registry()) {
    ++index;
    if (!only.empty() && s.name != only) continue;
    std::string reason;
    double seconds = 0.0;
    bool pass = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Report r = run_suite(s, {jobs});
      seconds = r.seconds;
      pass = r.all_pass();
      if (!pass) reason = failing_rows(r);
    } catch (const std::exception& e) {
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      reason = std::string("threw ") + e.what();
    }
    if (pass && seconds > s.budget_seconds) {
      pass = false;
      reason = "over budget";
    }
    failures += !pass;
    std::printf("%s %02d %s (%.1fs, budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", index, s.name.c_str(), seconds,
                s.budget_seconds, reason.empty() ? "" : ": ", reason.c_str());
    std::fflush(stdout);
  }
  std::printf("%d failing\n", failures);
  return failures == 0 ? 0 : 1;
}
