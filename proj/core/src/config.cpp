#include "surfqbm/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"

namespace surfqbm {

namespace pt = boost::property_tree;

double DriveSpec::omega() const { return 2.0 * std::numbers::pi * constants::c / wavelength; }
double DriveSpec::k() const { return 2.0 * std::numbers::pi / wavelength; }
double DriveSpec::field_amplitude() const {
  return std::sqrt(2.0 * intensity / (constants::eps0 * constants::c));
}

double StandingWaveProfile::z_peak() const { return (0.5 * std::numbers::pi - phase) / k0; }
double StandingWaveProfile::amplitude(double z) const {
  return amplitude_max * std::cos(k0 * (z - z_peak()));
}
double StandingWaveProfile::derivative(double z) const {
  return -k0 * amplitude_max * std::sin(k0 * (z - z_peak()));
}

std::vector<double> DistanceGrid::points() const {
  if (!values.empty()) return values;
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {z_min};
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(spacing == GridSpacing::log ? z_min * std::pow(z_max / z_min, t)
                                              : z_min + (z_max - z_min) * t);
  }
  return out;
}

StandingWaveProfile ScenarioConfig::profile() const {
  return {drive.field_amplitude(), phase, k0()};
}

double ScenarioConfig::alpha_real(double omega) const {
  return polarizability(particle, Frequency::real(omega), PolarizabilityMode::real_part).real();
}

std::complex<double> ScenarioConfig::alpha(Frequency f) const {
  return polarizability(particle, f, polarizability_mode);
}

void ScenarioConfig::validate() const {
  if (!(particle.radius > 0.0)) throw ConfigError("particle.radius", "must be > 0");
  if (!(particle.mass_density > 0.0)) throw ConfigError("particle.density", "must be > 0");
  if (!(drive.wavelength > 0.0)) throw ConfigError("drive.wavelength", "must be > 0");
  if (!(drive.intensity >= 0.0)) throw ConfigError("drive.intensity", "must be >= 0");
  if (!std::isfinite(phase)) throw ConfigError("drive.phase", "must be finite");
  if (!(temperature >= 0.0)) throw ConfigError("environment.temperature", "must be >= 0");
  if (!(trap_frequency > 0.0)) throw ConfigError("environment.trap_frequency", "must be > 0");
  if (!(gas.pressure >= 0.0)) throw ConfigError("environment.gas_pressure", "must be >= 0");
  if (!(gas.molecule_mass > 0.0)) throw ConfigError("environment.gas_molecule_mass", "must be > 0");
  if (!(gas.temperature > 0.0)) throw ConfigError("environment.gas_temperature", "must be > 0");
  for (double z : grid.values) {
    if (!(z > 0.0)) throw ConfigError("grid.values", "all distances must be > 0");
  }
  if (grid.values.empty() && grid.count > 0) {
    if (!(grid.z_min > 0.0)) throw ConfigError("grid.z_min", "must be > 0");
    if (!(grid.z_max >= grid.z_min)) throw ConfigError("grid.z_max", "must be >= grid.z_min");
  }
  if (grid.count < 0) throw ConfigError("grid.count", "must be >= 0");
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "particle.radius",         "particle.density",
      "particle.material",       "surface.model",
      "surface.plasma_frequency", "surface.damping",
      "drive.wavelength",        "drive.intensity",
      "drive.phase",             "environment.temperature",
      "environment.trap_frequency", "environment.gas_pressure",
      "environment.gas_molecule_mass", "environment.gas_temperature",
      "grid.z_min",              "grid.z_max",
      "grid.count",              "grid.spacing",
      "grid.values",             "model.coth_convention",
      "model.polarizability",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "not a number: '" + text + "'");
  }
  if (used != t.size()) throw ConfigError(key, "not a number: '" + text + "'");
  if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
  return v;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  bool has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }
  std::string text(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(key);
    if (!v) throw ConfigError(key, "missing required key");
    return trim(*v);
  }
  double number(const std::string& key) const { return to_double(key, text(key)); }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

 private:
  const pt::ptree& tree_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

ScenarioConfig from_tree(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section, "key outside of a section");
    }
    for (const auto& [key, value] : body) {
      const std::string path = section + "." + key;
      if (!known_keys().count(path)) throw ConfigError(path, "unknown key");
    }
  }
  Reader r(tree);
  ScenarioConfig cfg;

  cfg.particle.radius = r.number("particle.radius");
  cfg.particle.mass_density = r.number("particle.density");
  cfg.particle_material = r.text("particle.material");
  if (!presets::has_permittivity(cfg.particle_material)) {
    throw ConfigError("particle.material", "unknown material '" + cfg.particle_material + "'");
  }
  cfg.particle.permittivity = presets::permittivity(cfg.particle_material);

  cfg.surface_model = r.text("surface.model");
  if (cfg.surface_model == "drude") {
    const double wp = r.number("surface.plasma_frequency");
    const double g = r.number("surface.damping");
    if (!(wp > 0.0)) throw ConfigError("surface.plasma_frequency", "must be > 0");
    if (!(g >= 0.0)) throw ConfigError("surface.damping", "must be >= 0");
    cfg.surface = SurfaceModel::dielectric(Drude{wp, g}, "drude");
  } else if (presets::has_surface(cfg.surface_model)) {
    if (r.has("surface.plasma_frequency") || r.has("surface.damping")) {
      throw ConfigError("surface.plasma_frequency", "only valid with model = drude");
    }
    cfg.surface = presets::surface(cfg.surface_model);
  } else {
    throw ConfigError("surface.model", "unknown surface model '" + cfg.surface_model + "'");
  }

  cfg.drive.wavelength = r.number("drive.wavelength");
  cfg.drive.intensity = r.number("drive.intensity");
  cfg.phase = r.number("drive.phase", 0.0);

  cfg.temperature = r.number("environment.temperature");
  cfg.trap_frequency = r.number("environment.trap_frequency", cfg.trap_frequency);
  cfg.gas.pressure = r.number("environment.gas_pressure", 0.0);
  cfg.gas.molecule_mass = r.number("environment.gas_molecule_mass", cfg.gas.molecule_mass);
  cfg.gas.temperature = r.number("environment.gas_temperature", cfg.temperature > 0.0 ? cfg.temperature : 300.0);

  if (r.has("grid.values")) {
    cfg.grid.values = parse_list("grid.values", r.text("grid.values"));
    cfg.grid.count = static_cast<int>(cfg.grid.values.size());
    if (r.has("grid.z_min") || r.has("grid.z_max") || r.has("grid.spacing")) {
      throw ConfigError("grid.values", "cannot be combined with z_min/z_max/spacing");
    }
  } else {
    cfg.grid.z_min = r.number("grid.z_min", cfg.grid.z_min);
    cfg.grid.z_max = r.number("grid.z_max", cfg.grid.z_max);
    const double count = r.number("grid.count", 0.0);
    if (count != std::floor(count) || count < 0) throw ConfigError("grid.count", "must be a non-negative integer");
    cfg.grid.count = static_cast<int>(count);
    const std::string spacing = r.text("grid.spacing", "log");
    if (spacing == "log") {
      cfg.grid.spacing = GridSpacing::log;
    } else if (spacing == "linear") {
      cfg.grid.spacing = GridSpacing::linear;
    } else {
      throw ConfigError("grid.spacing", "expected 'log' or 'linear'");
    }
  }
  if (r.has("grid.values") && r.has("grid.count") &&
      static_cast<int>(r.number("grid.count")) != cfg.grid.count) {
    throw ConfigError("grid.count", "does not match the number of grid.values");
  }

  const std::string coth = r.text("model.coth_convention", "half");
  if (coth == "half") {
    cfg.coth = CothConvention::half;
  } else if (coth == "literal") {
    cfg.coth = CothConvention::literal;
  } else {
    throw ConfigError("model.coth_convention", "expected 'half' or 'literal'");
  }
  const std::string pol = r.text("model.polarizability", "real_part");
  if (pol == "real_part") {
    cfg.polarizability_mode = PolarizabilityMode::real_part;
  } else if (pol == "complex") {
    cfg.polarizability_mode = PolarizabilityMode::complex;
  } else {
    throw ConfigError("model.polarizability", "expected 'real_part' or 'complex'");
  }

  cfg.validate();
  return cfg;
}

}  // namespace

std::pair<std::string, std::string> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(text, "override must look like section.key=value");
  std::string key = trim(text.substr(0, eq));
  std::string value = trim(text.substr(eq + 1));
  if (key.find('.') == std::string::npos) throw ConfigError(key, "override key must be section.key");
  return {key, value};
}

ScenarioConfig load_config(const std::string& document, const Overrides& overrides) {
  pt::ptree tree;
  std::istringstream in(document);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", std::string("parse error: ") + e.message() + " (line " +
                              std::to_string(e.line()) + ")");
  }
  for (const auto& [key, value] : overrides) {
    if (!known_keys().count(key)) throw ConfigError(key, "unknown override key");
    tree.put(pt::ptree::path_type(key, '.'), value);
  }
  return from_tree(tree);
}

ScenarioConfig load_config_file(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str(), overrides);
}

std::string serialize(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[particle]\n"
      << "radius = " << fmt(cfg.particle.radius) << "\n"
      << "density = " << fmt(cfg.particle.mass_density) << "\n"
      << "material = " << cfg.particle_material << "\n\n";
  out << "[surface]\n"
      << "model = " << cfg.surface_model << "\n";
  if (cfg.surface_model == "drude") {
    const auto& d = std::get<Drude>(cfg.surface.model());
    out << "plasma_frequency = " << fmt(d.plasma) << "\n"
        << "damping = " << fmt(d.damping) << "\n";
  }
  out << "\n[drive]\n"
      << "wavelength = " << fmt(cfg.drive.wavelength) << "\n"
      << "intensity = " << fmt(cfg.drive.intensity) << "\n"
      << "phase = " << fmt(cfg.phase) << "\n\n";
  out << "[environment]\n"
      << "temperature = " << fmt(cfg.temperature) << "\n"
      << "trap_frequency = " << fmt(cfg.trap_frequency) << "\n"
      << "gas_pressure = " << fmt(cfg.gas.pressure) << "\n"
      << "gas_molecule_mass = " << fmt(cfg.gas.molecule_mass) << "\n"
      << "gas_temperature = " << fmt(cfg.gas.temperature) << "\n\n";
  out << "[grid]\n";
  if (!cfg.grid.values.empty()) {
    out << "values = ";
    for (std::size_t i = 0; i < cfg.grid.values.size(); ++i) {
      out << (i ? ", " : "") << fmt(cfg.grid.values[i]);
    }
    out << "\n";
  } else {
    out << "z_min = " << fmt(cfg.grid.z_min) << "\n"
        << "z_max = " << fmt(cfg.grid.z_max) << "\n"
        << "count = " << cfg.grid.count << "\n"
        << "spacing = " << (cfg.grid.spacing == GridSpacing::log ? "log" : "linear") << "\n";
  }
  out << "\n[model]\n"
      << "coth_convention = " << (cfg.coth == CothConvention::half ? "half" : "literal") << "\n"
      << "polarizability = "
      << (cfg.polarizability_mode == PolarizabilityMode::real_part ? "real_part" : "complex") << "\n";
  return out.str();
}

double intensity_for_trap_frequency(const ScenarioConfig& cfg, double omega) {
  if (!(omega > 0.0)) throw DomainError("trap frequency must be > 0");
  const double alpha = cfg.alpha_real(cfg.omega0());
  if (!(alpha > 0.0)) throw ModelError("trap needs a positive polarizability at the drive frequency");
  const double k = cfg.k0();
  const double e2 = 2.0 * cfg.mass() * omega * omega / (alpha * k * k);
  return 0.5 * constants::eps0 * constants::c * e2;
}

ScenarioConfig derive_intensity_from_trap_frequency(ScenarioConfig cfg) {
  cfg.drive.intensity = intensity_for_trap_frequency(cfg, cfg.trap_frequency);
  return cfg;
}

ScenarioConfig with_antinode_at(ScenarioConfig cfg, double z) {
  cfg.phase = 0.5 * std::numbers::pi - cfg.k0() * z;
  return cfg;
}

std::string default_config_text() {
  return R"([particle]
radius = 72e-9
density = 2000
material = silica_fused

[surface]
model = gold_drude

[drive]
wavelength = 1064e-9
intensity = 1e-11
phase = 0

[environment]
temperature = 300
trap_frequency = 3e6
gas_pressure = 1e-9
gas_molecule_mass = 5e-26

[grid]
z_min = 1.7e-9
z_max = 1.7e-6
count = 31
spacing = log

[model]
coth_convention = half
polarizability = real_part
)";
}

ScenarioConfig default_config() { return load_config(default_config_text()); }

}  // namespace surfqbm
