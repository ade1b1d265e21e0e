#include "cornerlab/config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "cornerlab/commands.hpp"

namespace cornerlab {

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

ObjectReader::ObjectReader(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
    : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(this->path(key), "unknown key");
  }
}

std::string ObjectReader::path(std::string_view key) const {
  return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

const Json& ObjectReader::at(std::string_view key) const {
  if (!has(key)) throw ConfigError(path(key), "required key missing");
  return j_->at(std::string(key));
}

double ObjectReader::number(std::string_view key, double fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_number()) throw ConfigError(path(key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path(key), "must be finite");
  return x;
}

double ObjectReader::positive(std::string_view key, double fallback) const {
  const double x = number(key, fallback);
  if (!(x > 0)) throw ConfigError(path(key), "must be positive");
  return x;
}

double ObjectReader::nonnegative(std::string_view key, double fallback) const {
  const double x = number(key, fallback);
  if (x < 0) throw ConfigError(path(key), "must be nonnegative");
  return x;
}

int ObjectReader::integer(std::string_view key, int fallback, int min_value) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
  const auto x = v.get<long long>();
  if (x < min_value) throw ConfigError(path(key), "must be at least " + std::to_string(min_value));
  if (x > 1'000'000'000) throw ConfigError(path(key), "too large");
  return static_cast<int>(x);
}

bool ObjectReader::boolean(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
  return v.get<bool>();
}

std::string ObjectReader::text(std::string_view key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_string()) throw ConfigError(path(key), "expected a string");
  return v.get<std::string>();
}

Vec2 ObjectReader::point(std::string_view key, Vec2 fallback) const {
  return has(key) ? parse_point(at(key), path(key)) : fallback;
}

double ObjectReader::angle(std::string_view key, double fallback) const {
  return has(key) ? parse_angle(at(key), path(key)) : fallback;
}

std::vector<double> ObjectReader::positive_list(std::string_view key, std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(path(key), "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path(key) + "[" + std::to_string(i) + "]";
    if (!v[i].is_number()) throw ConfigError(p, "expected a number");
    const double x = v[i].get<double>();
    if (!(x > 0) || !std::isfinite(x)) throw ConfigError(p, "must be positive");
    out.push_back(x);
  }
  return out;
}

double parse_angle(const Json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ConfigError(field, "expected a number or a multiple of pi such as \"pi/2\"");
  std::string s = v.get<std::string>();
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  static const std::regex form(R"(^([0-9]*\.?[0-9]+)?\*?pi(/([0-9]*\.?[0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, form)) throw ConfigError(field, "cannot read angle '" + s + "'");
  const double num = m[1].matched ? std::stod(m[1].str()) : 1.0;
  const double den = m[3].matched ? std::stod(m[3].str()) : 1.0;
  if (den == 0.0) throw ConfigError(field, "zero denominator");
  return num * pi / den;
}

Vec2 parse_point(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(field, "expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

IncidentField parse_incident(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ConfigError(field + ".type", "expected \"plane\", \"bessel\" or \"herglotz\"");
  const std::string type = j["type"].get<std::string>();
  if (type == "plane") {
    ObjectReader r(j, field, {"type", "k", "angle", "direction"});
    if (r.has("angle") && r.has("direction")) throw ConfigError(r.path("direction"), "give angle or direction, not both");
    Vec2 d = r.has("direction") ? r.point("direction", {}) : unit_vector(r.angle("angle", 0.0));
    const double len = norm(d);
    if (!(len > 0)) throw ConfigError(r.path("direction"), "must be nonzero");
    return PlaneWave{r.positive("k", 1.0), (1.0 / len) * d};
  }
  if (type == "bessel") {
    ObjectReader r(j, field, {"type", "k", "m", "amplitude", "center"});
    if (!r.has("m")) throw ConfigError(r.path("m"), "required key missing");
    const Json& mj = r.at("m");
    if (!mj.is_number_integer()) throw ConfigError(r.path("m"), "expected an integer");
    cplx amp = 1.0;
    if (r.has("amplitude")) {
      const Json& a = r.at("amplitude");
      if (a.is_number())
        amp = a.get<double>();
      else {
        const Vec2 p = parse_point(a, r.path("amplitude"));
        amp = {p.x, p.y};
      }
      if (amp == 0.0) throw ConfigError(r.path("amplitude"), "must be nonzero");
    }
    return BesselMode{r.positive("k", 1.0), mj.get<int>(), amp, r.point("center", {})};
  }
  if (type == "herglotz") {
    ObjectReader r(j, field, {"type", "k", "kernel"});
    const Json& kj = r.at("kernel");
    if (!kj.is_array() || kj.empty()) throw ConfigError(r.path("kernel"), "expected a nonempty array");
    Herglotz h{r.positive("k", 1.0), {}};
    for (std::size_t i = 0; i < kj.size(); ++i) {
      const std::string p = r.path("kernel") + "[" + std::to_string(i) + "]";
      if (kj[i].is_number())
        h.kernel.emplace_back(kj[i].get<double>());
      else {
        const Vec2 v = parse_point(kj[i], p);
        h.kernel.emplace_back(v.x, v.y);
      }
    }
    return h;
  }
  throw ConfigError(field + ".type", "unknown incident type '" + type + "'");
}

namespace {

CornerSpec parse_corner(const Json& j, const std::string& field) {
  ObjectReader r(j, field, {"rho0", "gamma_order", "gamma0", "sigma"});
  return {r.number("rho0", 0.0), r.nonnegative("gamma_order", 0.0), r.number("gamma0", 0.0),
          r.positive("sigma", 0.5)};
}

}  // namespace

MediumConfig parse_medium(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  const std::string kind = j.value("kind", std::string("polygon"));
  MediumConfig cfg;
  cfg.kind = kind;
  if (kind == "disc") {
    ObjectReader r(j, field, {"kind", "center", "radius", "a_in", "c_in"});
    cfg.center = r.point("center", {});
    cfg.radius = r.positive("radius", 1.0);
    cfg.a_in = r.positive("a_in", 1.0);
    cfg.c_in = r.number("c_in", 1.0);
  } else if (kind == "polygon") {
    ObjectReader r(j, field, {"kind", "vertices", "square", "corners", "a_bulk", "c_bumps"});
    if (r.has("vertices") == r.has("square"))
      throw ConfigError(r.path("vertices"), "give exactly one of vertices or square");
    if (r.has("square")) {
      ObjectReader sq(r.at("square"), r.path("square"), {"side", "center", "rotation"});
      cfg.vertices = square_vertices(sq.positive("side", 1.0), sq.point("center", {}), sq.angle("rotation", 0.0));
    } else {
      const Json& vs = r.at("vertices");
      if (!vs.is_array() || vs.size() < 3) throw ConfigError(r.path("vertices"), "need at least three vertices");
      for (std::size_t i = 0; i < vs.size(); ++i)
        cfg.vertices.push_back(parse_point(vs[i], r.path("vertices") + "[" + std::to_string(i) + "]"));
    }
    const Json& cs = r.at("corners");
    if (!cs.is_array() || cs.empty()) throw ConfigError(r.path("corners"), "expected a nonempty array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      cfg.corners.push_back(parse_corner(cs[i], r.path("corners") + "[" + std::to_string(i) + "]"));
    cfg.a_bulk = r.number("a_bulk", 0.0);
    if (r.has("c_bumps")) {
      const Json& bs = r.at("c_bumps");
      if (!bs.is_array()) throw ConfigError(r.path("c_bumps"), "expected an array");
      for (std::size_t i = 0; i < bs.size(); ++i) {
        ObjectReader b(bs[i], r.path("c_bumps") + "[" + std::to_string(i) + "]", {"center", "width", "amplitude"});
        cfg.c_bumps.push_back({b.point("center", {}), b.positive("width", 0.3), b.number("amplitude", 0.0)});
      }
    }
  } else {
    throw ConfigError(field + ".kind", "expected \"polygon\" or \"disc\"");
  }
  try {
    (void)assemble_medium(cfg);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  return cfg;
}

RunConfig parse_run_config(const Json& document) {
  ObjectReader top(document, "", {"command", "parameters", "output_dir"});
  RunConfig cfg;
  cfg.command = top.text("command", "");
  if (std::find(std::begin(run_commands), std::end(run_commands), cfg.command) == std::end(run_commands))
    throw ConfigError("command", cfg.command.empty() ? "required key missing" : "unknown command '" + cfg.command + "'");
  if (top.has("parameters")) cfg.parameters = top.at("parameters");
  cfg.output_dir = top.text("output_dir", "");
  validate_parameters(cfg.command, cfg.parameters);
  cfg.canonical = {{"command", cfg.command}, {"parameters", cfg.parameters}};
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  return parse_run_config(doc);
}

}  // namespace cornerlab
