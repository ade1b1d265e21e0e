#include "cornerlab/artifacts.hpp"

#include <boost/version.hpp>
#include <Eigen/Core>
#include <chrono>
#include <charconv>
#include <ctime>
#include <fstream>

namespace cornerlab {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_csv(const fs::path& p, const CsvTable& t) {
  std::ofstream out(p, std::ios::binary);
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << csv_field(t.header[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + p.string());
}

void write_json(const fs::path& p, const Json& j) {
  std::ofstream out(p, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + p.string());
}

// JSON has no representation for infinities; keep them readable.
Json number_json(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? Json("nan") : Json(x > 0 ? "inf" : "-inf");
}

}  // namespace

CsvTable report_table(const Report& r) {
  CsvTable t{"report.csv", {"check", "label", "value", "threshold", "asserted", "pass", "note"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({row.check, row.label, format_number(row.value), format_number(row.threshold),
                      row.asserted ? "true" : "false", row.pass ? "true" : "false", row.note});
  return t;
}

Json report_summary(const Report& r) {
  Json rows = Json::array();
  int asserted = 0;
  int failed = 0;
  for (const auto& row : r.rows) {
    asserted += row.asserted;
    failed += row.asserted && !row.pass;
    rows.push_back({{"check", row.check},
                    {"label", row.label},
                    {"value", number_json(row.value)},
                    {"threshold", number_json(row.threshold)},
                    {"asserted", row.asserted},
                    {"pass", row.pass},
                    {"note", row.note}});
  }
  return {{"name", r.name}, {"all_pass", r.all_pass()}, {"asserted", asserted}, {"failed", failed}, {"rows", rows}};
}

fs::path write_run(const fs::path& root, const RunConfig& cfg, const RunOutput& out, const ManifestInfo& info) {
  const fs::path dir = root / (cfg.command + "-" + cfg.hash());
  fs::create_directories(dir);
  std::vector<std::string> files;

  std::vector<CsvTable> tables{report_table(out.report)};
  tables.insert(tables.end(), out.tables.begin(), out.tables.end());
  for (const auto& t : tables) {
    write_csv(dir / t.file, t);
    files.push_back(t.file);
  }
  for (const auto& g : out.grids) {
    const std::string bin = g.stem + ".bin";
    std::ofstream b(dir / bin, std::ios::binary);
    b.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(cplx)));
    Json meta = g.meta;
    meta["file"] = bin;
    meta["dtype"] = "complex128";
    meta["byte_order"] = "little";
    meta["count"] = g.values.size();
    write_json(dir / (g.stem + ".json"), meta);
    files.push_back(bin);
    files.push_back(g.stem + ".json");
  }
  Json summary = report_summary(out.report);
  summary["config"] = cfg.canonical;
  if (out.console) summary["result"] = *out.console;
  write_json(dir / "summary.json", summary);
  files.push_back("summary.json");

  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  const Json manifest = {
      {"config_hash", cfg.hash()},
      {"command", cfg.command},
      {"all_pass", out.report.all_pass()},
      {"files", files},
      {"wall_time_seconds", info.wall_seconds},
      {"jobs", info.jobs},
      {"profile", info.profile},
      {"timestamp", stamp},
      {"versions",
       {{"cornerlab", "0.1.0"},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"boost", BOOST_LIB_VERSION},
        {"compiler", __VERSION__}}}};
  write_json(dir / "manifest.json", manifest);
  return dir;
}

}  // namespace cornerlab
