#include "yqc/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "yqc/errors.hpp"

namespace yqc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: invalid number for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) throw ConfigError("config: '" + key + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace

AtomSpec RunConfig::resolve_spec() const {
  AtomSpec spec = builtin_spec(spec_name);
  if (g_j_override) spec.g_j = *g_j_override;
  return spec;
}

FieldConfig RunConfig::point() const {
  return {point_b, point_delta, point_rabi, 0.0};
}

std::vector<double> RunConfig::b_grid() const {
  return linear_grid(b_min, b_max, b_step);
}

std::vector<double> RunConfig::omega_grid() const {
  return log_grid(omega_min, omega_max, omega_points);
}

std::vector<double> RunConfig::readout_b_grid() const {
  return linear_grid(readout_b_min, readout_b_max, readout_b_step);
}

std::vector<double> RunConfig::readout_omega_grid(const AtomSpec& spec) const {
  // default span: well below saturation up to a few Gamma
  const double lo = readout_omega_min.value_or(0.05 * spec.decay_rate);
  const double hi = readout_omega_max.value_or(10.0 * spec.decay_rate);
  return log_grid(lo, hi, readout_omega_points);
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "[run]\n"
     << "spec = " << spec_name << "\n";
  if (g_j_override) os << "g_j = " << *g_j_override << "\n";
  os << "[grid]\n"
     << "b_min_gauss = " << b_min << "\n"
     << "b_max_gauss = " << b_max << "\n"
     << "b_step_gauss = " << b_step << "\n"
     << "delta_margin_mhz = " << constants::to_mhz(delta_margin) << "\n"
     << "delta_step_mhz = " << constants::to_mhz(delta_step) << "\n"
     << "omega_min_mhz = " << constants::to_mhz(omega_min) << "\n"
     << "omega_max_mhz = " << constants::to_mhz(omega_max) << "\n"
     << "omega_points = " << omega_points << "\n"
     << "[readout]\n"
     << "b_min_gauss = " << readout_b_min << "\n"
     << "b_max_gauss = " << readout_b_max << "\n"
     << "b_step_gauss = " << readout_b_step << "\n";
  if (readout_omega_min)
    os << "omega_min_mhz = " << constants::to_mhz(*readout_omega_min) << "\n";
  if (readout_omega_max)
    os << "omega_max_mhz = " << constants::to_mhz(*readout_omega_max) << "\n";
  os << "omega_points = " << readout_omega_points << "\n"
     << "probe_detuning_mhz = " << constants::to_mhz(probe_detuning) << "\n"
     << "[thresholds]\n"
     << "p_max = " << thresholds.p_max << "\n"
     << "leak_max = " << thresholds.leak_max << "\n"
     << "delta_floor_mhz = " << constants::to_mhz(thresholds.delta_floor) << "\n"
     << "[point]\n"
     << "b_gauss = " << point_b << "\n"
     << "delta_mhz = " << constants::to_mhz(point_delta) << "\n"
     << "omega_mhz = " << constants::to_mhz(point_rabi) << "\n"
     << "transition_mi = " << point_mi << "\n"
     << "waist_um = " << waist * 1e6 << "\n";
  return os.str();
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section = "run";
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " +
                        std::to_string(lineno));
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "run.spec") cfg.spec_name = value;
    else if (key == "run.g_j") cfg.g_j_override = parse_double(key, value);
    else if (key == "run.threads") cfg.threads = parse_int(key, value);
    else if (key == "grid.b_min_gauss") cfg.b_min = parse_double(key, value);
    else if (key == "grid.b_max_gauss") cfg.b_max = parse_double(key, value);
    else if (key == "grid.b_step_gauss") cfg.b_step = parse_double(key, value);
    else if (key == "grid.delta_margin_mhz")
      cfg.delta_margin = constants::from_mhz(parse_double(key, value));
    else if (key == "grid.delta_step_mhz")
      cfg.delta_step = constants::from_mhz(parse_double(key, value));
    else if (key == "grid.omega_min_mhz")
      cfg.omega_min = constants::from_mhz(parse_double(key, value));
    else if (key == "grid.omega_max_mhz")
      cfg.omega_max = constants::from_mhz(parse_double(key, value));
    else if (key == "grid.omega_points") cfg.omega_points = parse_int(key, value);
    else if (key == "readout.b_min_gauss") cfg.readout_b_min = parse_double(key, value);
    else if (key == "readout.b_max_gauss") cfg.readout_b_max = parse_double(key, value);
    else if (key == "readout.b_step_gauss") cfg.readout_b_step = parse_double(key, value);
    else if (key == "readout.omega_min_mhz")
      cfg.readout_omega_min = constants::from_mhz(parse_double(key, value));
    else if (key == "readout.omega_max_mhz")
      cfg.readout_omega_max = constants::from_mhz(parse_double(key, value));
    else if (key == "readout.omega_points")
      cfg.readout_omega_points = parse_int(key, value);
    else if (key == "readout.probe_detuning_mhz")
      cfg.probe_detuning = constants::from_mhz(parse_double(key, value));
    else if (key == "thresholds.p_max") cfg.thresholds.p_max = parse_double(key, value);
    else if (key == "thresholds.leak_max")
      cfg.thresholds.leak_max = parse_double(key, value);
    else if (key == "thresholds.delta_floor_mhz")
      cfg.thresholds.delta_floor = constants::from_mhz(parse_double(key, value));
    else if (key == "point.b_gauss") cfg.point_b = parse_double(key, value);
    else if (key == "point.delta_mhz")
      cfg.point_delta = constants::from_mhz(parse_double(key, value));
    else if (key == "point.omega_mhz")
      cfg.point_rabi = constants::from_mhz(parse_double(key, value));
    else if (key == "point.transition_mi") cfg.point_mi = parse_double(key, value);
    else if (key == "point.waist_um") cfg.waist = parse_double(key, value) * 1e-6;
    else
      throw ConfigError("config: unknown key '" + key + "' at line " +
                        std::to_string(lineno));
  }
  if (cfg.thresholds.p_max <= 0 || cfg.thresholds.leak_max <= 0 ||
      cfg.thresholds.delta_floor <= 0)
    throw ConfigError("config: thresholds must be positive");
  if (cfg.threads < 1) throw ConfigError("config: threads must be >= 1");
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_text(os.str());
}

uint64_t fnv1a_hash(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace yqc
