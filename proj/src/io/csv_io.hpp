#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "energy.hpp"
#include "timestepper.hpp"
#include "verification.hpp"

namespace poromt {

enum class FieldName { U, Phi, W };

FieldName parse_field_name(const std::string& text);  // "u", "phi", "w"
const char* field_label(FieldName field) noexcept;

inline constexpr const char* kTimeseriesHeader =
    "t,E_total,E_kinetic,E_accel,E_elastic,E_velgrad,E_porousgrad,E_coupled,E_thermal,"
    "neg_log_E,dissipation";

/// %.17g, so every value survives a text round trip.
std::string format_number(double v);

/// Writes through `<path>.partial` and renames on success; the partial file
/// is removed if `body` throws. Throws Io.
void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& body);

void write_timeseries(std::ostream& os, const Trajectory& traj);
void write_field(std::ostream& os, const Trajectory& traj, FieldName field);

void write_timeseries_csv(const Trajectory& traj, const std::string& path);
void write_field_csv(const Trajectory& traj, FieldName field, const std::string& path);

/// t and E_total columns of a file written by write_timeseries_csv.
struct EnergySeries {
  std::vector<double> t;
  std::vector<double> energy;
};

EnergySeries read_timeseries_csv(const std::string& path);

inline constexpr double kDefaultTailFraction = 0.5;

/// Plain-text summary of a run: constants, decay fit, dissipation check and
/// Lyapunov margins.
std::string run_report(const RunConfig& cfg, const Trajectory& traj);

std::string format_decay_fit(const DecayFit& fit);

/// One row per level of each sweep, then one footer row per sweep with the
/// fitted orders.
void write_rates(std::ostream& os, const ConvergenceReport& report);
void write_rates_csv(const ConvergenceReport& report, const std::string& path);

}  // namespace poromt
