#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cornerlab/experiments.hpp"

namespace cornerlab {

struct SuiteContext {
  int jobs = 1;
};

struct Suite {
  std::string name;
  std::string description;
  double budget_seconds = 600.0;  // laptop wall-time allowance
  std::function<Report(const SuiteContext&)> run;
};

// Fixed registry, one suite per acceptance criterion, in criterion order.
const std::vector<Suite>& suite_registry();
const Suite* find_suite(const std::string& name);

// Runs the suite and stamps the wall time into Report::seconds.
Report run_suite(const Suite& s, const SuiteContext& ctx = {});

}  // namespace cornerlab
