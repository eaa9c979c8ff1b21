#ifndef OPTOMECH_CONFIG_HPP
#define OPTOMECH_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "optomech/quadrature.hpp"
#include "optomech/units.hpp"

namespace optomech {

using json = nlohmann::json;

// Thrown for any schema violation; message carries the JSON-pointer-style
// path of the offending key and, for parse errors, line and column.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte_pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte_pos && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

// Wraps one JSON object; tracks which keys were consumed so that leftovers
// can be rejected. Every section must call done() after reading its keys.
class Strict {
 public:
  Strict(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  T require(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(path_ + "/" + key + ": missing required key");
    return get<T>(key);
  }

  template <typename T>
  T optional(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return get<T>(key);
  }

  Strict section(const std::string& key) {
    seen_.insert(key);
    return Strict(j_.at(key), path_ + "/" + key);
  }

  Vec3 require_vec3(const std::string& key) {
    const auto v = require<std::vector<double>>(key);
    if (v.size() != 3) throw ConfigError(path_ + "/" + key + ": expected 3 numbers");
    return Vec3(v[0], v[1], v[2]);
  }
  Vec3 optional_vec3(const std::string& key, const Vec3& fallback) {
    if (!j_.contains(key)) return fallback;
    return require_vec3(key);
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) {
        throw ConfigError(path_ + "/" + it.key() + ": unknown key (strict schema)");
      }
    }
  }

 private:
  template <typename T>
  T get(const std::string& key) {
    seen_.insert(key);
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "/" + key + ": " + e.what());
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

} // namespace detail

struct PathConfig {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
  int panels = 8;
  int order = 8;
};

struct SweepConfig {
  double min_m = 0.0;
  double max_m = 0.0;
  int points = 101;
};

struct QueryConfig {
  Vec3 position_m = Vec3::Zero();
  Vec3 velocity_m_s = Vec3::Zero();
  Vec3 angular_velocity_rad_s = Vec3::Zero();
};

struct DynamicsConfig {
  double dt_s = 0.0;
  long steps = 0;
  int record_every = 100;
  Vec3 initial_position_m = Vec3::Zero();
  Vec3 initial_velocity_m_s = Vec3::Zero();
  Vec3 initial_angular_velocity_rad_s = Vec3::Zero();
  double fd_step_m = 0.0;  // 0: auto from beam scale
  double local_energy_budget = 0.0;
};

struct ModesEvolveConfig {
  std::string family = "traveling";  // traveling | standing
  Vec3 box_lo_m = Vec3::Zero();
  Vec3 box_hi_m = Vec3::Zero();
  std::vector<double> wavenumbers_per_m;
  Vec3 center_m = Vec3::Zero();
  double drive_amplitude_m = 0.0;
  std::string drive = "resonant";  // resonant | detuned | custom
  double detune_couplings = 10.0;  // offset in units of the coupling rate
  double drive_omega_per_m = 0.0;  // for drive == custom (natural frequency)
  double dt_m = 0.0;               // natural time step (meters); 0: auto
  double duration_m = 0.0;         // 0: one full transfer period
  int record_every = 0;
  int initial_mode = 0;
  int target_mode = 1;
};

struct RunConfig {
  DielectricSphere sphere{1.0, 1.5};
  BeamParams beam;
  double photon_number = 0.0;  // resolved: explicit value wins over power
  QuadratureSpec quadrature;
  PathConfig path;
  SweepConfig sweep;
  QueryConfig query;
  DynamicsConfig dynamics;
  ModesEvolveConfig modes_evolve;
  std::string output_path;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: all hardware threads

  bool has_path = false;
  bool has_sweep = false;
  bool has_dynamics = false;
  bool has_modes_evolve = false;
};

inline RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error at " + detail::line_col(text, e.byte) + ": " +
                      e.what());
  }

  detail::Strict top(root, "");
  RunConfig c;

  {
    auto s = top.section("sphere");
    const double r = s.require<double>("radius_m");
    const double n = s.require<double>("refractive_index");
    const double rho = s.optional<double>("density_kg_m3", 2200.0);
    s.done();
    c.sphere = DielectricSphere(r, n, rho);
  }
  {
    auto b = top.section("beam");
    c.beam.wavelength = b.require<double>("wavelength_m");
    c.beam.rayleigh_range = b.require<double>("rayleigh_range_m");
    c.beam.cavity_length = b.require<double>("cavity_length_m");
    c.beam.power_si = b.optional<double>("power_w", 0.0);
    b.done();
    if (c.beam.wavelength <= 0 || c.beam.rayleigh_range <= 0 || c.beam.cavity_length <= 0) {
      throw ConfigError("/beam: lengths must be positive");
    }
  }
  c.photon_number = top.optional<double>("photon_number", 0.0);
  if (c.photon_number == 0.0 && c.beam.power_si > 0.0) {
    c.photon_number = photon_number_from_power(c.beam.power_si, c.beam.cavity_length,
                                               c.beam.wavelength);
  }

  if (top.has("quadrature")) {
    auto q = top.section("quadrature");
    c.quadrature.radial_order = q.optional<int>("radial", c.quadrature.radial_order);
    c.quadrature.polar_order = q.optional<int>("polar", c.quadrature.polar_order);
    c.quadrature.azimuthal_order = q.optional<int>("azimuthal", c.quadrature.azimuthal_order);
    c.quadrature.target_rel_tol = q.optional<double>("target_rel_tol",
                                                     c.quadrature.target_rel_tol);
    q.done();
    if (c.quadrature.radial_order < 2 || c.quadrature.polar_order < 2 || c.quadrature.azimuthal_order < 4) {
      throw ConfigError("/quadrature: orders too low");
    }
  }
  if (top.has("path")) {
    auto p = top.section("path");
    c.path.start = p.require_vec3("start_m");
    c.path.end = p.require_vec3("end_m");
    c.path.panels = p.optional<int>("panels", c.path.panels);
    c.path.order = p.optional<int>("order", c.path.order);
    p.done();
    c.has_path = true;
  }
  if (top.has("sweep")) {
    auto s = top.section("sweep");
    c.sweep.min_m = s.require<double>("min_m");
    c.sweep.max_m = s.require<double>("max_m");
    c.sweep.points = s.optional<int>("points", c.sweep.points);
    s.done();
    if (c.sweep.points < 2 || !(c.sweep.max_m > c.sweep.min_m)) {
      throw ConfigError("/sweep: need points >= 2 and max_m > min_m");
    }
    c.has_sweep = true;
  }
  if (top.has("query")) {
    auto q = top.section("query");
    c.query.position_m = q.optional_vec3("position_m", Vec3::Zero());
    c.query.velocity_m_s = q.optional_vec3("velocity_m_s", Vec3::Zero());
    c.query.angular_velocity_rad_s = q.optional_vec3("angular_velocity_rad_s", Vec3::Zero());
    q.done();
  }
  if (top.has("dynamics")) {
    auto d = top.section("dynamics");
    c.dynamics.dt_s = d.require<double>("dt_s");
    c.dynamics.steps = d.require<long>("steps");
    c.dynamics.record_every = d.optional<int>("record_every", c.dynamics.record_every);
    c.dynamics.initial_position_m = d.optional_vec3("initial_position_m", Vec3::Zero());
    c.dynamics.initial_velocity_m_s = d.optional_vec3("initial_velocity_m_s", Vec3::Zero());
    c.dynamics.initial_angular_velocity_rad_s =
        d.optional_vec3("initial_angular_velocity_rad_s", Vec3::Zero());
    c.dynamics.fd_step_m = d.optional<double>("fd_step_m", 0.0);
    c.dynamics.local_energy_budget = d.optional<double>("local_energy_budget", 0.0);
    d.done();
    if (!(c.dynamics.dt_s > 0.0) || c.dynamics.steps <= 0 || c.dynamics.record_every < 1) {
      throw ConfigError("/dynamics: need dt_s > 0, steps > 0, record_every >= 1");
    }
    c.has_dynamics = true;
  }
  if (top.has("modes_evolve")) {
    auto m = top.section("modes_evolve");
    c.modes_evolve.family = m.optional<std::string>("family", "traveling");
    c.modes_evolve.box_lo_m = m.require_vec3("box_lo_m");
    c.modes_evolve.box_hi_m = m.require_vec3("box_hi_m");
    c.modes_evolve.wavenumbers_per_m = m.require<std::vector<double>>("wavenumbers_per_m");
    c.modes_evolve.center_m = m.require_vec3("center_m");
    c.modes_evolve.drive_amplitude_m = m.require<double>("drive_amplitude_m");
    c.modes_evolve.drive = m.optional<std::string>("drive", "resonant");
    c.modes_evolve.detune_couplings = m.optional<double>("detune_couplings", 10.0);
    c.modes_evolve.drive_omega_per_m = m.optional<double>("drive_omega_per_m", 0.0);
    c.modes_evolve.dt_m = m.optional<double>("dt_m", 0.0);
    c.modes_evolve.duration_m = m.optional<double>("duration_m", 0.0);
    c.modes_evolve.record_every = m.optional<int>("record_every", 0);
    c.modes_evolve.initial_mode = m.optional<int>("initial_mode", 0);
    c.modes_evolve.target_mode = m.optional<int>("target_mode", 1);
    m.done();
    const auto& me = c.modes_evolve;
    if (me.family != "traveling" && me.family != "standing") {
      throw ConfigError("/modes_evolve/family: expected 'traveling' or 'standing'");
    }
    if (me.drive != "resonant" && me.drive != "detuned" && me.drive != "custom") {
      throw ConfigError("/modes_evolve/drive: expected 'resonant', 'detuned' or 'custom'");
    }
    if (me.wavenumbers_per_m.size() < 2) {
      throw ConfigError("/modes_evolve/wavenumbers_per_m: need at least two modes");
    }
    const int nm = static_cast<int>(me.wavenumbers_per_m.size());
    if (me.initial_mode < 0 || me.initial_mode >= nm || me.target_mode < 0 ||
        me.target_mode >= nm) {
      throw ConfigError("/modes_evolve: mode indices out of range");
    }
    c.has_modes_evolve = true;
  }
  c.output_path = top.optional<std::string>("output_path", "");
  c.seed = top.optional<std::uint64_t>("seed", 0);
  c.threads = top.optional<int>("threads", 0);
  top.done();
  return c;
}

inline RunConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// Fully-resolved round-trip of the configuration (defaults made explicit);
// embedded into every structured output for reproducibility.
inline json resolved_json(const RunConfig& c) {
  json j;
  j["sphere"] = {{"radius_m", c.sphere.radius},
                 {"refractive_index", c.sphere.refractive_index},
                 {"density_kg_m3", c.sphere.density_si}};
  j["beam"] = {{"wavelength_m", c.beam.wavelength},
               {"rayleigh_range_m", c.beam.rayleigh_range},
               {"cavity_length_m", c.beam.cavity_length},
               {"power_w", c.beam.power_si}};
  j["photon_number"] = c.photon_number;
  j["quadrature"] = {{"radial", c.quadrature.radial_order},
                     {"polar", c.quadrature.polar_order},
                     {"azimuthal", c.quadrature.azimuthal_order},
                     {"target_rel_tol", c.quadrature.target_rel_tol}};
  if (c.has_path) {
    j["path"] = {{"start_m", {c.path.start.x(), c.path.start.y(), c.path.start.z()}},
                 {"end_m", {c.path.end.x(), c.path.end.y(), c.path.end.z()}},
                 {"panels", c.path.panels},
                 {"order", c.path.order}};
  }
  if (c.has_sweep) {
    j["sweep"] = {{"min_m", c.sweep.min_m}, {"max_m", c.sweep.max_m},
                  {"points", c.sweep.points}};
  }
  j["query"] = {{"position_m", {c.query.position_m.x(), c.query.position_m.y(),
                                c.query.position_m.z()}},
                {"velocity_m_s", {c.query.velocity_m_s.x(), c.query.velocity_m_s.y(),
                                  c.query.velocity_m_s.z()}},
                {"angular_velocity_rad_s",
                 {c.query.angular_velocity_rad_s.x(), c.query.angular_velocity_rad_s.y(),
                  c.query.angular_velocity_rad_s.z()}}};
  if (c.has_dynamics) {
    const auto& d = c.dynamics;
    j["dynamics"] = {
        {"dt_s", d.dt_s},
        {"steps", d.steps},
        {"record_every", d.record_every},
        {"initial_position_m",
         {d.initial_position_m.x(), d.initial_position_m.y(), d.initial_position_m.z()}},
        {"initial_velocity_m_s",
         {d.initial_velocity_m_s.x(), d.initial_velocity_m_s.y(),
          d.initial_velocity_m_s.z()}},
        {"initial_angular_velocity_rad_s",
         {d.initial_angular_velocity_rad_s.x(), d.initial_angular_velocity_rad_s.y(),
          d.initial_angular_velocity_rad_s.z()}},
        {"fd_step_m", d.fd_step_m},
        {"local_energy_budget", d.local_energy_budget}};
  }
  if (c.has_modes_evolve) {
    const auto& m = c.modes_evolve;
    j["modes_evolve"] = {
        {"family", m.family},
        {"box_lo_m", {m.box_lo_m.x(), m.box_lo_m.y(), m.box_lo_m.z()}},
        {"box_hi_m", {m.box_hi_m.x(), m.box_hi_m.y(), m.box_hi_m.z()}},
        {"wavenumbers_per_m", m.wavenumbers_per_m},
        {"center_m", {m.center_m.x(), m.center_m.y(), m.center_m.z()}},
        {"drive_amplitude_m", m.drive_amplitude_m},
        {"drive", m.drive},
        {"detune_couplings", m.detune_couplings},
        {"drive_omega_per_m", m.drive_omega_per_m},
        {"dt_m", m.dt_m},
        {"duration_m", m.duration_m},
        {"record_every", m.record_every},
        {"initial_mode", m.initial_mode},
        {"target_mode", m.target_mode}};
  }
  if (!c.output_path.empty()) j["output_path"] = c.output_path;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

} // namespace optomech

#endif
