#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace poromt {

namespace {

constexpr std::string_view kSweepPrefix = "sweep.";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::Parse, key + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

int parse_int(const std::string& key, std::string_view text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::Parse, key + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

double* param_slot(PhysicalParams& p, const std::string& key) {
  static const std::map<std::string, double PhysicalParams::*> slots = {
      {"rho", &PhysicalParams::rho},     {"mu", &PhysicalParams::mu},
      {"b", &PhysicalParams::b},         {"J", &PhysicalParams::J},
      {"delta", &PhysicalParams::delta}, {"xi", &PhysicalParams::xi},
      {"d", &PhysicalParams::d},         {"alpha", &PhysicalParams::alpha},
      {"kappa", &PhysicalParams::kappa}, {"k", &PhysicalParams::k},
      {"l", &PhysicalParams::l}};
  auto it = slots.find(key);
  return it == slots.end() ? nullptr : &(p.*(it->second));
}

ProfilePreset* profile_slot(RunConfig& cfg, const std::string& key) {
  if (key == "init_u0") return &cfg.init_u0;
  if (key == "init_u1") return &cfg.init_u1;
  if (key == "init_phi0") return &cfg.init_phi0;
  if (key == "init_phi1") return &cfg.init_phi1;
  if (key == "init_w0") return &cfg.init_w0;
  return nullptr;
}

bool is_required(const std::string& key) {
  return !key.starts_with("init_") && key != "output_every";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

// Splits a document into key/value lines, rejecting malformed lines and
// repeated keys.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::map<std::string, int> seen;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++number;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;

    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": expected 'key = value'");
    }
    std::string key(trim(raw.substr(0, eq)));
    std::string value(trim(raw.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": empty key or value");
    }
    if (auto [it, fresh] = seen.emplace(key, number); !fresh) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(number) + ": duplicate key '" + key +
                                        "' (first set on line " + std::to_string(it->second) + ")");
    }
    lines.push_back({number, std::move(key), std::move(value)});
  }
  return lines;
}

RunConfig build_config(const std::vector<Line>& lines) {
  RunConfig cfg;
  std::vector<std::string> present;
  for (const Line& line : lines) {
    try {
      set_config_value(cfg, line.key, line.value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Parse) throw;
      throw Error(ErrorCode::Parse, "line " + std::to_string(line.number) + ": " + e.what());
    }
    present.push_back(line.key);
  }
  for (const std::string& key : config_keys()) {
    if (is_required(key) && std::find(present.begin(), present.end(), key) == present.end()) {
      throw Error(ErrorCode::MissingKey, "missing key '" + key + "'");
    }
  }
  validate_run_config(cfg);
  return cfg;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "rho",   "mu", "b",  "J",       "delta",   "xi",      "d",         "alpha",
      "kappa", "k",  "l",  "s",       "dt",      "t_final", "init_u0",   "init_u1",
      "init_phi0", "init_phi1", "init_w0", "output_every"};
  return keys;
}

void set_config_value(RunConfig& cfg, const std::string& key, std::string_view value) {
  if (double* slot = param_slot(cfg.params, key)) {
    *slot = parse_double(key, value);
  } else if (ProfilePreset* profile = profile_slot(cfg, key)) {
    *profile = ProfilePreset::parse(std::string(value));
  } else if (key == "s") {
    cfg.s = parse_int(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "t_final") {
    cfg.t_final = parse_double(key, value);
  } else if (key == "output_every") {
    cfg.output_every = parse_int(key, value);
  } else {
    throw Error(ErrorCode::UnknownKey, "unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::string_view text) { return build_config(tokenize(text)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error while reading '" + path + "'");
  return buf.str();
}

RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  const auto values = param_values(cfg.params);
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << kParamNames[i] << " = " << format_double(values[i]) << '\n';
  }
  os << "s = " << cfg.s << '\n';
  os << "dt = " << format_double(cfg.dt) << '\n';
  os << "t_final = " << format_double(cfg.t_final) << '\n';
  os << "init_u0 = " << cfg.init_u0.to_string() << '\n';
  os << "init_u1 = " << cfg.init_u1.to_string() << '\n';
  os << "init_phi0 = " << cfg.init_phi0.to_string() << '\n';
  os << "init_phi1 = " << cfg.init_phi1.to_string() << '\n';
  os << "init_w0 = " << cfg.init_w0.to_string() << '\n';
  os << "output_every = " << cfg.output_every << '\n';
  return os.str();
}

SweepSpec parse_sweep_config(std::string_view text) {
  std::vector<Line> base_lines;
  SweepSpec spec;
  for (Line& line : tokenize(text)) {
    if (!line.key.starts_with(kSweepPrefix)) {
      base_lines.push_back(std::move(line));
      continue;
    }
    std::string key = line.key.substr(kSweepPrefix.size());
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCode::UnknownKey, "unknown sweep key '" + key + "'");
    }
    std::vector<std::string> values;
    std::string_view rest = line.value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (item.empty()) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line.number) + ": empty sweep value");
      }
      values.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
      if (trim(rest).empty()) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line.number) + ": trailing comma");
      }
    }
    spec.axes.emplace_back(std::move(key), std::move(values));
  }
  spec.base = build_config(base_lines);
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_text_file(path));
}

}  // namespace poromt
