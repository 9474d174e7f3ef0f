#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "timestepper.hpp"

namespace poromt {

/// Keys accepted by parse_config, in serialization order.
const std::vector<std::string>& config_keys();

/// Parses the flat `key = value` format. Lines may end in CRLF, `#` starts a
/// comment. Throws UnknownKey, MissingKey or Parse (message carries the
/// line number), then validates the result with validate_run_config. The
/// mesh is not built here, so s = 1 is only rejected by run().
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws Io if it cannot be read.
RunConfig load_config(const std::string& path);

/// Inverse of parse_config; doubles are written with 17 significant digits.
std::string serialize_config(const RunConfig& cfg);

/// Assigns one key of `cfg` from its textual value. Throws UnknownKey or Parse.
void set_config_value(RunConfig& cfg, const std::string& key, std::string_view value);

/// Base config plus the grid axes given by `sweep.<key> = v1, v2, ...` lines.
struct SweepSpec {
  RunConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
};

SweepSpec parse_sweep_config(std::string_view text);
SweepSpec load_sweep_config(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace poromt
