#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cornerlab/commands.hpp"
#include "cornerlab/suites.hpp"

using namespace cornerlab;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int status = -1;
  std::string out;
};

Invocation invoke(const std::string& args) {
  const std::string cmd = std::string(CORNERLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cornerlab_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json last_json_line(const std::string& out) {
  std::string line = out;
  std::istringstream in(out);
  std::string l;
  while (std::getline(in, l))
    if (!l.empty() && l.front() == '{') line = l;
  return Json::parse(line);
}

}  // namespace

TEST_CASE("angle strings") {
  CHECK(parse_angle(Json("pi/2"), "x") == doctest::Approx(pi / 2));
  CHECK(parse_angle(Json("2pi/3"), "x") == doctest::Approx(2 * pi / 3));
  CHECK(parse_angle(Json("0.25*pi"), "x") == doctest::Approx(pi / 4));
  CHECK(parse_angle(Json("pi"), "x") == doctest::Approx(pi));
  CHECK(parse_angle(Json(1.25), "x") == 1.25);
  CHECK_THROWS_AS(parse_angle(Json("tau/2"), "x"), ConfigError);
  CHECK_THROWS_AS(parse_angle(Json("pi/0"), "x"), ConfigError);
}

TEST_CASE("config validation names the field") {
  auto field_of = [](const std::string& text) {
    try {
      parse_run_config(Json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  CHECK(field_of(R"({"command":"nope"})") == "command");
  CHECK(field_of(R"({"command":"cgo","extra":1})") == "extra");
  CHECK(field_of(R"({"command":"cgo","parameters":{"n":-4}})") == "parameters.n");
  CHECK(field_of(R"({"command":"forward","parameters":{"incident":{"type":"bessel"}}})") == "parameters.incident.m");
  CHECK(field_of(R"({"command":"forward","parameters":{"medium":{"kind":"polygon","vertices":[[0,0],[0,1],[1,1]],"corners":[{}]}}})") ==
        "parameters.medium");
  CHECK(field_of(R"({"command":"sweep","parameters":{"grid_levels":[0.05]}})") == "parameters.grid_levels");
  CHECK(field_of(R"({"command":"herglotz","parameters":{"lambdas":[1e-4,1e-2]}})") == "parameters.lambdas");
  CHECK(field_of(R"({"command":"suite","parameters":{"name":"missing"}})") == "parameters.name");
  CHECK(field_of(R"({"command":"classify","parameters":{"incident":{"type":"plane"},"psi0":"pi/2","epsilon":-1}})") ==
        "parameters.epsilon");
  CHECK(field_of(R"({"command":"asymptotics"})") == "<accepted>");
}

TEST_CASE("config hash ignores the output directory") {
  const RunConfig a = parse_run_config(Json::parse(R"({"command":"cgo","parameters":{"k":2}})"));
  const RunConfig b = parse_run_config(Json::parse(R"({"output_dir":"elsewhere","parameters":{"k":2},"command":"cgo"})"));
  const RunConfig c = parse_run_config(Json::parse(R"({"command":"cgo","parameters":{"k":3}})"));
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("suite registry") {
  const auto& reg = suite_registry();
  CHECK(reg.size() == 12);
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j) CHECK(reg[i].name != reg[j].name);
  CHECK(find_suite("disc_mie_validation") != nullptr);
  CHECK(find_suite("hull_uniqueness_square") != nullptr);
  CHECK(find_suite("corner_decay_exceptional_angles") != nullptr);
  CHECK(find_suite("nope") == nullptr);

  const Invocation r = invoke("list-suites");
  CHECK(r.status == 0);
  const Json listed = Json::parse(r.out);
  REQUIRE(listed.size() == 12);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    CHECK(listed[i]["name"] == reg[i].name);
    CHECK_FALSE(listed[i]["description"].get<std::string>().empty());
  }
}

TEST_CASE("classify prints its verdict") {
  const fs::path dir = scratch_dir("classify");
  const fs::path cfg = write_config(
      dir, "c.json", R"({"command":"classify","parameters":{"incident":{"type":"bessel","m":2},"psi0":1.5707963}})");
  const Invocation r = invoke("--config " + cfg.string() + " --out " + (dir / "runs").string());
  CHECK(r.status == 0);
  const Json j = last_json_line(r.out);
  CHECK(j["class_E"] == true);
  CHECK(j["l"] == 1);

  const fs::path plain = write_config(
      dir, "p.json", R"({"command":"classify","parameters":{"incident":{"type":"plane","k":1},"psi0":"pi/2"}})");
  const Json p = last_json_line(invoke("--config " + plain.string() + " --out " + (dir / "runs").string()).out);
  CHECK(p["class_E"] == false);
  CHECK(p["l"].is_null());
}

TEST_CASE("config errors exit with status 2") {
  const fs::path dir = scratch_dir("errors");
  const fs::path neg = write_config(
      dir, "neg.json",
      R"({"command":"classify","parameters":{"incident":{"type":"plane"},"psi0":"pi/2","epsilon":-0.5}})");
  const Invocation r = invoke("--config " + neg.string() + " --out " + (dir / "runs").string());
  CHECK(r.status == 2);
  const Json err = last_json_line(r.out);
  CHECK(err["error"] == "ConfigError");
  CHECK(err["field"] == "parameters.epsilon");

  const fs::path broken = write_config(dir, "broken.json", "{\"command\": ");
  CHECK(invoke("--config " + broken.string()).status == 2);
  CHECK(invoke("--config " + (dir / "absent.json").string()).status == 2);
  CHECK(invoke("run-suite no_such_suite").status == 2);
  CHECK(invoke("--profile desktop list-suites").status == 2);
  CHECK_FALSE(fs::exists(dir / "runs"));
}

TEST_CASE("artifacts are deterministic") {
  const fs::path dir = scratch_dir("determinism");
  const fs::path cfg = write_config(dir, "a.json",
                                    R"({"command":"asymptotics","parameters":{"incomplete_gamma":false,"c1":false,
                                        "exceptional":false,"bounds":false}})");
  const Invocation first = invoke("--config " + cfg.string() + " --out " + (dir / "one").string() + " --jobs 1");
  const Invocation second = invoke("--config " + cfg.string() + " --out " + (dir / "two").string() + " --jobs 2");
  REQUIRE(first.status == 0);
  REQUIRE(second.status == 0);
  const fs::path run1 = last_json_line(first.out)["run_dir"].get<std::string>();
  const fs::path run2 = last_json_line(second.out)["run_dir"].get<std::string>();
  CHECK(run1.filename() == run2.filename());
  for (const char* f : {"report.csv", "summary.json"}) CHECK(slurp(run1 / f) == slurp(run2 / f));
  const Json manifest = Json::parse(slurp(run1 / "manifest.json"));
  CHECK(manifest["config_hash"].get<std::string>().size() == 16);
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest.contains("versions"));
  CHECK(manifest["all_pass"] == true);
  CHECK(slurp(run1 / "report.csv").rfind("check,label,value,threshold,asserted,pass,note\n", 0) == 0);
}

TEST_CASE("forward run writes far field and grids") {
  const fs::path dir = scratch_dir("forward");
  const fs::path cfg = write_config(dir, "f.json",
                                    R"({"command":"forward","parameters":{"points_per_wavelength":40,"n_angles":64}})");
  const Invocation r = invoke("--config " + cfg.string() + " --out " + dir.string());
  REQUIRE(r.status == 0);
  const fs::path run = last_json_line(r.out)["run_dir"].get<std::string>();
  CHECK(fs::exists(run / "far_field.csv"));
  const Json meta = Json::parse(slurp(run / "u_total.json"));
  const auto n = meta["shape"][0].get<std::size_t>();
  CHECK(meta["count"].get<std::size_t>() == n * n);
  CHECK(fs::file_size(run / "u_total.bin") == n * n * 16);

  // The same run with an impossible series tolerance fails its assertion.
  const fs::path strict = write_config(
      dir, "s.json", R"({"command":"forward","parameters":{"points_per_wavelength":40,"series_tolerance":1e-12}})");
  CHECK(invoke("--config " + strict.string() + " --out " + dir.string()).status == 1);
}

TEST_CASE("execute maps commands onto experiments") {
  const RunOutput out = execute(parse_run_config(Json::parse(
      R"({"command":"classify","parameters":{"incident":{"type":"bessel","m":3},"psi0":"pi/3"}})")));
  REQUIRE(out.console.has_value());
  CHECK((*out.console)["class_E"] == true);
  CHECK((*out.console)["N"] == 2);
}
