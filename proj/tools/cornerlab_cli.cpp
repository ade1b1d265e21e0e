#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "cornerlab/commands.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/suites.hpp"

using namespace cornerlab;

namespace {

constexpr int exit_assertion = 1;
constexpr int exit_config = 2;

int report_error(const std::string& kind, const std::string& field, const std::string& message, int code) {
  Json err = {{"error", kind}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  std::cout << err.dump() << std::endl;
  return code;
}

int run(const RunConfig& cfg, const std::string& out_root, int jobs, const std::string& profile) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  try {
    out = execute(cfg, {jobs});
  } catch (const ConfigError& e) {
    return report_error("ConfigError", e.field(), e.what(), exit_config);
  } catch (const Error& e) {
    return report_error(std::string(error_name(e.kind())), "", e.what(), exit_assertion);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string root = cfg.output_dir.empty() ? out_root : cfg.output_dir;
  const auto dir = write_run(root, cfg, out, {wall, jobs, profile});
  if (out.console) {
    std::cout << out.console->dump() << std::endl;
  } else {
    int failed = 0;
    for (const auto& r : out.report.rows) failed += r.asserted && !r.pass;
    std::cout << Json{{"run_dir", dir.string()}, {"all_pass", out.report.all_pass()}, {"failed", failed}}.dump()
              << std::endl;
  }
  return out.report.all_pass() ? 0 : exit_assertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corner scattering laboratory"};
  std::string config_path;
  std::string out_root = "runs";
  std::string profile = "laptop";
  int jobs = 0;
  app.add_option("--config", config_path, "run configuration (JSON)");
  app.add_option("--out", out_root, "root directory for run artifacts");
  app.add_option("--jobs", jobs, "worker threads (default: logical cores, 1 under the ci profile)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--profile", profile, "laptop or ci")->check(CLI::IsMember({"laptop", "ci"}));

  auto* list = app.add_subcommand("list-suites", "print the built-in suites");
  std::string suite_name;
  auto* suite = app.add_subcommand("run-suite", "run one built-in suite");
  suite->add_option("name", suite_name, "suite name")->required();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }
  if (jobs == 0) jobs = profile == "ci" ? 1 : default_jobs();

  if (*list) {
    Json suites = Json::array();
    for (const Suite& s : suite_registry())
      suites.push_back({{"name", s.name}, {"description", s.description}, {"budget_seconds", s.budget_seconds}});
    std::cout << suites.dump(2) << std::endl;
    return 0;
  }

  RunConfig cfg;
  try {
    if (*suite)
      cfg = parse_run_config(Json{{"command", "suite"}, {"parameters", {{"name", suite_name}}}});
    else if (!config_path.empty())
      cfg = load_run_config(config_path);
    else
      return report_error("ConfigError", "--config", "nothing to do: give --config or a subcommand", exit_config);
  } catch (const ConfigError& e) {
    return report_error("ConfigError", e.field(), e.what(), exit_config);
  }
  return run(cfg, out_root, jobs, profile);
}
