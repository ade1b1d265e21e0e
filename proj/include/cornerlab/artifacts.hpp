#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/config.hpp"
#include "cornerlab/experiments.hpp"

namespace cornerlab {

struct CsvTable {
  std::string file;  // relative to the run directory
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Flat little-endian complex128 array, row-major, with a JSON sidecar of the same stem.
struct GridArtifact {
  std::string stem;
  Json meta;
  std::vector<cplx> values;
};

struct RunOutput {
  Report report;
  std::vector<CsvTable> tables;
  std::vector<GridArtifact> grids;
  std::optional<Json> console;  // printed to stdout when present
};

// Shortest round-trip decimal form, identical across runs.
std::string format_number(double x);

CsvTable report_table(const Report& r);
Json report_summary(const Report& r);

struct ManifestInfo {
  double wall_seconds = 0.0;
  int jobs = 1;
  std::string profile;
};

// Writes every artifact plus summary.json and manifest.json into root/<command>-<hash>/ and
// returns that directory. Only manifest.json carries run-dependent fields.
std::filesystem::path write_run(const std::filesystem::path& root, const RunConfig& cfg, const RunOutput& out,
                                const ManifestInfo& info);

}  // namespace cornerlab
