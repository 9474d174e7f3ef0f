#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace poromt {

struct SweepPoint {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::string>> assignment;  // axis key -> value
  RunConfig config;
};

/// Cartesian product of the axes, first axis varying slowest.
std::vector<SweepPoint> expand_grid(const SweepSpec& spec);

struct SweepOutcome {
  SweepPoint point;
  std::optional<ErrorCode> error;
  std::string message;
  double energy_last = 0;
  double omega_hat = 0;
  double r_squared = 0;
  double omega_bound = 0;  // omega of lyapunov_constants
  int dissipation_violations = 0;
};

/// Runs every grid point on `workers` threads. Each point writes
/// energy.csv, report.txt and config.cfg into `<out_dir>/run_<index>/`;
/// summary.csv is written last. Failed points are reported in the outcome
/// and in the summary, not thrown.
std::vector<SweepOutcome> run_sweep(const SweepSpec& spec, const std::string& out_dir,
                                    unsigned workers = 0);

}  // namespace poromt
