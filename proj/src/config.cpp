#include "chnst/config.hpp"

#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace chnst {

namespace {

std::string format_config_error(int line, const std::string& message) {
  if (line > 0) return "config line " + std::to_string(line) + ": " + message;
  return "config: " + message;
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const std::size_t first = s.find_first_not_of(ws);
  if (first == std::string::npos) return {};
  const std::size_t last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError(line, "value '" + value + "' for key '" + key + "' is not a number");
  }
  if (!std::isfinite(x)) {
    throw ConfigError(line, "value for key '" + key + "' must be finite");
  }
  return x;
}

int parse_int(const std::string& value, const std::string& key, int line) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE || x < INT_MIN || x > INT_MAX) {
    throw ConfigError(line, "value '" + value + "' for key '" + key + "' is not an integer");
  }
  return static_cast<int>(x);
}

std::vector<int> parse_levels(const std::string& value, int line) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(line, "empty entry in 'levels' list");
    out.push_back(parse_int(item, "levels", line));
  }
  if (out.empty()) throw ConfigError(line, "key 'levels' needs at least one entry");
  if (out.front() < 1) throw ConfigError(line, "levels must be >= 1");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] != out[i - 1] + 1) {
      throw ConfigError(line, "levels must be consecutive and ascending");
    }
  }
  return out;
}

void require(bool ok, int line, const std::string& message) {
  if (!ok) throw ConfigError(line, message);
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(format_config_error(line, message)), line_(line) {}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  int diffusion_line = 0;  // last line that touched the diffusion matrix

  std::stringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "expected 'key = value', got '" + body + "'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key before '='");
    if (value.empty()) throw ConfigError(line, "missing value for key '" + key + "'");

    if (key == "preset") {
      cfg.preset = value;
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "level") {
      cfg.level = parse_int(value, key, line);
      require(cfg.level >= 1 && cfg.level <= 12, line, "level must be between 1 and 12");
    } else if (key == "tau") {
      cfg.step.tau = parse_double(value, key, line);
      require(cfg.step.tau > 0.0, line, "tau must be positive");
    } else if (key == "T") {
      cfg.final_time = parse_double(value, key, line);
      require(cfg.final_time >= 0.0, line, "T must be nonnegative");
    } else if (key == "gamma") {
      cfg.model.gamma = parse_double(value, key, line);
      require(cfg.model.gamma > 0.0, line, "gamma must be positive");
    } else if (key == "epsilon") {
      cfg.model.epsilon = parse_double(value, key, line);
      require(cfg.model.epsilon >= 0.0, line, "epsilon must be nonnegative");
    } else if (key == "delta") {
      cfg.model.delta = parse_double(value, key, line);
      require(cfg.model.delta >= 0.0, line, "delta must be nonnegative");
    } else if (key == "L11") {
      cfg.model.L11 = parse_double(value, key, line);
      diffusion_line = line;
    } else if (key == "L12") {
      cfg.model.L12 = parse_double(value, key, line);
      diffusion_line = line;
    } else if (key == "L22") {
      cfg.model.L22 = parse_double(value, key, line);
      diffusion_line = line;
    } else if (key == "visc_const") {
      cfg.model.visc_const = parse_double(value, key, line);
      require(cfg.model.visc_const > 0.0, line, "visc_const must be positive");
    } else if (key == "visc_quad") {
      cfg.model.visc_quad = parse_double(value, key, line);
      require(cfg.model.visc_quad >= 0.0, line, "visc_quad must be nonnegative");
    } else if (key == "c_split") {
      cfg.model.c_split = parse_double(value, key, line);
      require(cfg.model.c_split >= 1.0, line,
              "c_split must be at least 1 to keep the shifted well convex");
    } else if (key == "theta_min") {
      cfg.model.theta_min = parse_double(value, key, line);
      require(cfg.model.theta_min > 0.0, line, "theta_min must be positive");
    } else if (key == "newton_tol") {
      cfg.step.newton_tol = parse_double(value, key, line);
      require(cfg.step.newton_tol > 0.0, line, "newton_tol must be positive");
    } else if (key == "newton_max") {
      cfg.step.newton_max = parse_int(value, key, line);
      require(cfg.step.newton_max >= 1, line, "newton_max must be at least 1");
    } else if (key == "star_mode") {
      if (value == "explicit") {
        cfg.step.star_mode = StarMode::explicit_old;
      } else if (value == "implicit") {
        cfg.step.star_mode = StarMode::implicit_new;
      } else {
        throw ConfigError(line, "star_mode must be 'explicit' or 'implicit', got '" + value + "'");
      }
    } else if (key == "stride") {
      cfg.stride = parse_int(value, key, line);
      require(cfg.stride >= 0, line, "stride must be nonnegative");
    } else if (key == "levels") {
      cfg.levels = parse_levels(value, line);
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }

  // Per-key checks above cover every single-key rule, so the only failure
  // reachable here is the cross-key diffusion positivity condition.
  try {
    cfg.model.validate();
    cfg.step.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(diffusion_line, err.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace chnst
