#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cornerlab/helmholtz_fields.hpp"
#include "cornerlab/medium.hpp"

namespace cornerlab {

using Json = nlohmann::json;

// Schema violation; `field` is a dotted path such as "parameters.incident.m".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorKind::ConfigError, field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline constexpr std::string_view run_commands[] = {"asymptotics", "cgo",      "forward", "sweep",
                                                    "uniqueness",  "herglotz", "classify", "suite"};

struct RunConfig {
  std::string command;
  Json parameters = Json::object();
  std::string output_dir;  // empty: use the --out flag
  Json canonical;          // validated document, keys sorted

  // 16 hex digits of FNV-1a over the canonical dump.
  std::string hash() const;
};

// Checks the top level and the command's parameter table, including medium assembly.
RunConfig parse_run_config(const Json& document);
RunConfig load_run_config(const std::string& path);

// Typed access to one JSON object with unknown keys rejected up front.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path, std::initializer_list<std::string_view> allowed);

  bool has(std::string_view key) const { return j_->contains(std::string(key)); }
  const Json& at(std::string_view key) const;
  std::string path(std::string_view key) const;

  double number(std::string_view key, double fallback) const;
  double positive(std::string_view key, double fallback) const;
  double nonnegative(std::string_view key, double fallback) const;
  int integer(std::string_view key, int fallback, int min_value) const;
  bool boolean(std::string_view key, bool fallback) const;
  std::string text(std::string_view key, const std::string& fallback) const;
  Vec2 point(std::string_view key, Vec2 fallback) const;
  double angle(std::string_view key, double fallback) const;
  std::vector<double> positive_list(std::string_view key, std::vector<double> fallback) const;

 private:
  const Json* j_;
  std::string path_;
};

// Numbers, or strings of the form "[a][*]pi[/b]" such as "pi/2", "2pi/3", "0.25*pi".
double parse_angle(const Json& v, const std::string& field);
Vec2 parse_point(const Json& v, const std::string& field);

// {"type": "plane", "k", "angle" | "direction"}, {"type": "bessel", "k", "m", "amplitude", "center"},
// {"type": "herglotz", "k", "kernel": [[re, im], ...]}.
IncidentField parse_incident(const Json& j, const std::string& field);

// {"kind": "polygon", "vertices" | "square", "corners", "a_bulk", "c_bumps"} or
// {"kind": "disc", "center", "radius", "a_in", "c_in"}. Assembles once to surface medium errors
// as config errors.
MediumConfig parse_medium(const Json& j, const std::string& field);

}  // namespace cornerlab
