#include "hypomix/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypomix/errors.hpp"
#include "hypomix/shear.hpp"

namespace hypomix {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << line << ": " << msg;
  throw ConfigError(os.str());
}

double parse_double(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected a number, got '" + v + "'");
  return x;
}

long parse_long(const std::string& v, std::size_t line) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail(line, "expected an integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& monitor_names() {
  static const std::vector<std::string> names = {
      "phi_ode", "lyapunov", "final_bound", "gronwall", "lemma_gap"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    auto [it, fresh] = seen.emplace(key, lineno);
    if (!fresh) {
      std::ostringstream os;
      os << "duplicate key '" << key << "' (first set on line " << it->second
         << ")";
      fail(lineno, os.str());
    }

    if (key == "profile") {
      cfg.profile_name = val;
    } else if (key.rfind("profile.", 0) == 0) {
      const std::string param = key.substr(8);
      if (param.empty()) fail(lineno, "empty profile parameter name");
      cfg.profile_params[param] = parse_double(val, lineno);
    } else if (key == "model") {
      try {
        cfg.model = model_from_string(val);
      } catch (const ConfigError& e) {
        fail(lineno, e.what());
      }
    } else if (key == "k") {
      cfg.k = static_cast<int>(parse_long(val, lineno));
    } else if (key == "nu") {
      cfg.nu = parse_double(val, lineno);
    } else if (key == "grid.L") {
      cfg.L = parse_double(val, lineno);
    } else if (key == "grid.N") {
      const long n = parse_long(val, lineno);
      if (n <= 0) fail(lineno, "grid.N must be positive");
      cfg.N = static_cast<std::size_t>(n);
    } else if (key == "time.dt") {
      cfg.time.dt = parse_double(val, lineno);
    } else if (key == "time.T") {
      cfg.time.T = parse_double(val, lineno);
    } else if (key == "time.sample_every") {
      const long m = parse_long(val, lineno);
      if (m <= 0) fail(lineno, "time.sample_every must be >= 1");
      cfg.time.sample_every = static_cast<std::size_t>(m);
    } else if (key == "init.kind") {
      try {
        cfg.init.kind = init_kind_from_string(val);
      } catch (const ConfigError& e) {
        fail(lineno, e.what());
      }
    } else if (key == "init.center") {
      cfg.init.center = parse_double(val, lineno);
    } else if (key == "init.width") {
      cfg.init.width = parse_double(val, lineno);
    } else if (key == "init.amplitude_re") {
      cfg.init.amplitude.real(parse_double(val, lineno));
    } else if (key == "init.amplitude_im") {
      cfg.init.amplitude.imag(parse_double(val, lineno));
    } else if (key == "monitors") {
      cfg.monitors = split_list(val);
    } else if (key == "seed") {
      cfg.seed = parse_long(val, lineno);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

void validate(const RunConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("config: k must be >= 1");
  if (!(cfg.nu >= 0.0)) throw ConfigError("config: nu must be >= 0");
  if (!(cfg.L > 0.0)) throw ConfigError("config: grid.L must be positive");
  if (cfg.N < 16) throw ConfigError("config: grid.N must be >= 16");
  if (!(cfg.time.dt > 0.0)) throw ConfigError("config: time.dt must be positive");
  if (!(cfg.time.T > 0.0)) throw ConfigError("config: time.T must be positive");
  if (!(cfg.init.width > 0.0))
    throw ConfigError("config: init.width must be positive");
  cfg.init.validate_support(cfg.L);
  for (const std::string& m : cfg.monitors) {
    const auto& names = monitor_names();
    if (std::find(names.begin(), names.end(), m) == names.end())
      throw ConfigError("config: unknown monitor '" + m + "'");
  }
  find_profile(cfg.profile_name, cfg.profile_params);  // throws if unknown
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "profile = " << cfg.profile_name << "\n";
  for (const auto& [name, value] : cfg.profile_params)
    os << "profile." << name << " = " << fmt(value) << "\n";
  os << "model = " << to_string(cfg.model) << "\n";
  os << "k = " << cfg.k << "\n";
  os << "nu = " << fmt(cfg.nu) << "\n";
  os << "grid.L = " << fmt(cfg.L) << "\n";
  os << "grid.N = " << cfg.N << "\n";
  os << "time.dt = " << fmt(cfg.time.dt) << "\n";
  os << "time.T = " << fmt(cfg.time.T) << "\n";
  os << "time.sample_every = " << cfg.time.sample_every << "\n";
  os << "init.kind = " << to_string(cfg.init.kind) << "\n";
  os << "init.center = " << fmt(cfg.init.center) << "\n";
  os << "init.width = " << fmt(cfg.init.width) << "\n";
  os << "init.amplitude_re = " << fmt(cfg.init.amplitude.real()) << "\n";
  os << "init.amplitude_im = " << fmt(cfg.init.amplitude.imag()) << "\n";
  if (!cfg.monitors.empty()) {
    os << "monitors = ";
    for (std::size_t i = 0; i < cfg.monitors.size(); ++i)
      os << (i ? ", " : "") << cfg.monitors[i];
    os << "\n";
  }
  os << "seed = " << cfg.seed << "\n";
  return os.str();
}

}  // namespace hypomix
