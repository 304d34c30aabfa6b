#include "hubring/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace hubring {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double to_double(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': cannot parse '" + value + "' as a number");
  }
  if (used != value.size()) fail(line, "key '" + key + "': trailing characters in '" + value + "'");
  if (!std::isfinite(out)) fail(line, "key '" + key + "': value must be finite");
  return out;
}

int to_int(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(value, &used);
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': cannot parse '" + value + "' as an integer");
  }
  if (used != value.size()) fail(line, "key '" + key + "': trailing characters in '" + value + "'");
  return static_cast<int>(out);
}

bool to_bool(const std::string& value, int line, const std::string& key) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  fail(line, "key '" + key + "': expected true/false, got '" + value + "'");
}

Placement parse_placement(const std::string& token) {
  const std::size_t at = token.find('@');
  if (at == std::string::npos) {
    throw ConfigError("placement '" + token + "' must look like content@site");
  }
  const std::string content = token.substr(0, at);
  const std::string site_text = token.substr(at + 1);
  Placement p;
  if (content == "up") {
    p.content = SiteContent::Up;
  } else if (content == "down") {
    p.content = SiteContent::Down;
  } else if (content == "doublon") {
    p.content = SiteContent::Doublon;
  } else {
    throw ConfigError("placement content must be up, down or doublon, got '" + content + "'");
  }
  try {
    std::size_t used = 0;
    p.site = std::stoi(site_text, &used);
    if (used != site_text.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ConfigError("placement site '" + site_text + "' is not an integer");
  }
  return p;
}

std::vector<Placement> parse_placement_list(const std::string& text) {
  std::vector<Placement> placements;
  std::istringstream stream(text);
  std::string token;
  while (stream >> token) placements.push_back(parse_placement(token));
  if (placements.empty()) throw ConfigError("placement list is empty");
  return placements;
}

}  // namespace

InitialStateSpec parse_initial_state(const std::string& value) {
  const std::string text = trim(value);
  if (text == "symmetric") return InitialStateSpec::symmetric();

  if (text.rfind("product:", 0) == 0) {
    return InitialStateSpec::product(parse_placement_list(text.substr(8)));
  }

  if (text.rfind("superposition:", 0) == 0) {
    std::vector<InitialTerm> terms;
    std::string rest = text.substr(14);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      const std::size_t open = rest.find('(', pos);
      if (open == std::string::npos) break;
      const std::size_t close = rest.find(')', open);
      if (close == std::string::npos) {
        throw ConfigError("superposition term is missing a closing parenthesis");
      }
      std::string head = trim(rest.substr(pos, open - pos));
      if (!head.empty() && head.front() == '+') head = trim(head.substr(1));
      double amplitude = 1.0;
      if (!head.empty()) {
        if (head.back() != '*') {
          throw ConfigError("superposition term must look like amplitude*(placements), got '" +
                            head + "('");
        }
        const std::string amp_text = trim(head.substr(0, head.size() - 1));
        try {
          std::size_t used = 0;
          amplitude = std::stod(amp_text, &used);
          if (used != amp_text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ConfigError("superposition amplitude '" + amp_text + "' is not a number");
        }
      }
      terms.push_back({amplitude, parse_placement_list(rest.substr(open + 1, close - open - 1))});
      pos = close + 1;
      const std::string tail = trim(rest.substr(pos));
      if (tail.empty()) break;
      if (tail.front() != '+') {
        throw ConfigError("superposition terms must be joined with '+'");
      }
    }
    if (terms.empty()) throw ConfigError("superposition has no terms");
    return InitialStateSpec::superposition(std::move(terms));
  }

  throw ConfigError("initial state must be 'symmetric', 'product: ...' or 'superposition: ...'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string raw_line;
  int line = 0;

  while (std::getline(stream, raw_line)) {
    ++line;
    const std::size_t hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string content = trim(raw_line);
    if (content.empty()) continue;

    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + content + "'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) fail(line, "missing key before '='");
    if (value.empty()) fail(line, "key '" + key + "' has no value");
    if (config.present.count(key)) fail(line, "duplicate key '" + key + "'");
    config.present.insert(key);

    if (key == "scenario") {
      config.scenario = value;
    } else if (key == "L") {
      config.sites = to_int(value, line, key);
    } else if (key == "n_up") {
      config.n_up = to_int(value, line, key);
    } else if (key == "n_dn") {
      config.n_dn = to_int(value, line, key);
    } else if (key == "J") {
      config.tunneling = to_double(value, line, key);
    } else if (key == "U") {
      config.interaction = to_double(value, line, key);
    } else if (key == "h") {
      config.barrier_height = to_double(value, line, key);
    } else if (key == "alpha") {
      config.alpha = to_double(value, line, key);
    } else if (key == "config") {
      config.bias = value;
    } else if (key == "alpha_min") {
      config.alpha_min = to_double(value, line, key);
    } else if (key == "alpha_max") {
      config.alpha_max = to_double(value, line, key);
    } else if (key == "alpha_step") {
      config.alpha_step = to_double(value, line, key);
    } else if (key == "t_max") {
      config.t_max = to_double(value, line, key);
    } else if (key == "dt") {
      config.dt = to_double(value, line, key);
    } else if (key == "mode") {
      config.mode = value;
    } else if (key == "krylov_dim") {
      config.krylov_dim = to_int(value, line, key);
    } else if (key == "krylov_tol") {
      config.krylov_tol = to_double(value, line, key);
    } else if (key == "initial") {
      try {
        config.initial = parse_initial_state(value);
      } catch (const ConfigError& e) {
        fail(line, e.what());
      }
      config.initial_text = value;
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else if (key == "formats") {
      config.write_csv = false;
      config.write_json = false;
      std::istringstream formats(value);
      std::string format;
      while (std::getline(formats, format, ',')) {
        const std::string f = trim(format);
        if (f == "csv") {
          config.write_csv = true;
        } else if (f == "json") {
          config.write_json = true;
        } else {
          fail(line, "unknown output format '" + f + "' (expected csv and/or json)");
        }
      }
      if (!config.write_csv && !config.write_json) fail(line, "formats must name csv and/or json");
    } else if (key == "plots") {
      config.plots = to_bool(value, line, key);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  // Scenario and per-scenario key applicability.
  if (config.scenario.empty()) {
    throw ConfigError("config: missing required key 'scenario'");
  }
  const bool comparison = config.scenario == "barrier-comparison";
  const bool flip = config.scenario == "direction-flip";
  const bool scan = config.scenario == "alpha-scan";
  if (!comparison && !flip && !scan) {
    throw ConfigError("config: unknown scenario '" + config.scenario +
                      "' (expected barrier-comparison, direction-flip or alpha-scan)");
  }
  auto reject_if_present = [&](const char* key, const std::string& reason) {
    if (config.present.count(key)) {
      throw ConfigError("config: key '" + std::string(key) + "' does not apply: " + reason);
    }
  };
  if (scan) reject_if_present("alpha", "the alpha-scan scenario sweeps alpha");
  if (comparison) {
    reject_if_present("config", "barrier-comparison takes 'initial', not a bias config");
  }
  if (!scan) {
    reject_if_present("alpha_min", "only alpha-scan takes a scan range");
    reject_if_present("alpha_max", "only alpha-scan takes a scan range");
    reject_if_present("alpha_step", "only alpha-scan takes a scan range");
  }
  if (!comparison) {
    reject_if_present("initial", "only barrier-comparison takes a custom initial state; "
                                 "direction-flip and alpha-scan select it via 'config'");
  }

  // Domains.
  if (config.sites < 2 || config.sites % 2 != 0) {
    throw ConfigError("config: L must be an even site count >= 2, got " +
                      std::to_string(config.sites));
  }
  try {
    config.sector().validate();
    config.params().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(config.tunneling > 0.0)) {
    throw ConfigError("config: J must be positive (it sets the unit of energy), got " +
                      std::to_string(config.tunneling));
  }
  try {
    TimeGrid(config.t_max, config.dt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (scan) {
    try {
      config.scan().validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (config.bias != "A" && config.bias != "B" && config.bias != "both") {
    throw ConfigError("config: 'config' must be A, B or both, got '" + config.bias + "'");
  }
  if (config.mode != "auto" && config.mode != "exact" && config.mode != "krylov") {
    throw ConfigError("config: mode must be auto, exact or krylov, got '" + config.mode + "'");
  }
  if (config.krylov_dim < 2) throw ConfigError("config: krylov_dim must be >= 2");
  if (!(config.krylov_tol > 0.0)) throw ConfigError("config: krylov_tol must be positive");

  if (comparison && !config.initial) {
    config.initial = InitialStateSpec::symmetric();
    config.initial_text = "symmetric";
  }
  return config;
}

std::string echo_config(const RunConfig& config) {
  std::ostringstream out;
  auto number = [](double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return std::string(buffer);
  };
  out << "scenario = " << config.scenario << "\n";
  out << "L = " << config.sites << "\n";
  out << "n_up = " << config.n_up << "\n";
  out << "n_dn = " << config.n_dn << "\n";
  out << "J = " << number(config.tunneling) << "\n";
  out << "U = " << number(config.interaction) << "\n";
  out << "h = " << number(config.barrier_height) << "\n";
  if (config.scenario != "alpha-scan") out << "alpha = " << number(config.alpha) << "\n";
  if (config.scenario != "barrier-comparison") out << "config = " << config.bias << "\n";
  if (config.scenario == "alpha-scan") {
    out << "alpha_min = " << number(config.alpha_min) << "\n";
    out << "alpha_max = " << number(config.alpha_max) << "\n";
    out << "alpha_step = " << number(config.alpha_step) << "\n";
  }
  out << "t_max = " << number(config.t_max) << "\n";
  out << "dt = " << number(config.dt) << "\n";
  out << "mode = " << config.mode << "\n";
  out << "krylov_dim = " << config.krylov_dim << "\n";
  out << "krylov_tol = " << number(config.krylov_tol) << "\n";
  if (config.scenario == "barrier-comparison") {
    out << "initial = " << (config.initial_text.empty() ? "symmetric" : config.initial_text)
        << "\n";
  }
  if (!config.out_dir.empty()) out << "out_dir = " << config.out_dir << "\n";
  out << "formats = " << (config.write_csv && config.write_json
                              ? "csv,json"
                              : (config.write_csv ? "csv" : "json"))
      << "\n";
  out << "plots = " << (config.plots ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace hubring
