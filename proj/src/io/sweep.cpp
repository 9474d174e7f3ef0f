#include "sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "csv_io.hpp"
#include "parallel.hpp"

namespace poromt {

namespace fs = std::filesystem;

std::vector<SweepPoint> expand_grid(const SweepSpec& spec) {
  std::size_t total = 1;
  for (const auto& [key, values] : spec.axes) total *= values.size();

  std::vector<SweepPoint> points;
  points.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    SweepPoint point;
    point.index = i;
    point.config = spec.base;
    std::size_t rest = i;
    std::vector<std::size_t> digits(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      digits[a] = rest % spec.axes[a].second.size();
      rest /= spec.axes[a].second.size();
    }
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const auto& [key, values] = spec.axes[a];
      point.assignment.emplace_back(key, values[digits[a]]);
    }
    points.push_back(std::move(point));
  }
  return points;
}

namespace {

std::string run_dir_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu", index);
  return buf;
}

void execute(SweepOutcome& outcome, const fs::path& dir) {
  RunConfig& cfg = outcome.point.config;
  for (const auto& [key, value] : outcome.point.assignment) set_config_value(cfg, key, value);
  validate_run_config(cfg);

  const Trajectory traj = run(cfg);
  fs::create_directories(dir);
  write_file_atomically((dir / "config.cfg").string(),
                        [&](std::ostream& os) { os << serialize_config(cfg); });
  write_timeseries_csv(traj, (dir / "energy.csv").string());
  const std::string report = run_report(cfg, traj);
  write_file_atomically((dir / "report.txt").string(), [&](std::ostream& os) { os << report; });

  outcome.energy_last = traj.steps.back().energy.total;
  outcome.omega_bound = traj.constants.omega;
  outcome.dissipation_violations = dissipation_check(traj, cfg.params).violations;
  std::vector<double> t, e;
  for (const StepRecord& r : traj.steps) {
    t.push_back(r.t);
    e.push_back(r.energy.total);
  }
  const DecayFit fit = fit_decay_rate(t, e, kDefaultTailFraction);
  outcome.omega_hat = fit.omega_hat;
  outcome.r_squared = fit.r_squared;
}

}  // namespace

std::vector<SweepOutcome> run_sweep(const SweepSpec& spec, const std::string& out_dir,
                                    unsigned workers) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir + "': " + ec.message());

  std::vector<SweepOutcome> outcomes;
  for (SweepPoint& point : expand_grid(spec)) {
    SweepOutcome outcome;
    outcome.point = std::move(point);
    outcomes.push_back(std::move(outcome));
  }

  parallel_for(outcomes.size(), workers, [&](std::size_t i) {
    SweepOutcome& outcome = outcomes[i];
    try {
      execute(outcome, fs::path(out_dir) / run_dir_name(outcome.point.index));
    } catch (const Error& e) {
      outcome.error = e.code();
      outcome.message = e.what();
    } catch (const std::exception& e) {
      outcome.error = ErrorCode::Io;
      outcome.message = e.what();
    }
  });

  write_file_atomically((fs::path(out_dir) / "summary.csv").string(), [&](std::ostream& os) {
    os << "run";
    for (const auto& [key, values] : spec.axes) os << ',' << key;
    os << ",status,E_last,omega_hat,r_squared,omega_bound,dissipation_violations\n";
    for (const SweepOutcome& o : outcomes) {
      os << run_dir_name(o.point.index);
      for (const auto& [key, value] : o.point.assignment) os << ',' << value;
      if (o.error) {
        os << ',' << to_string(*o.error) << ",,,,,\n";
        continue;
      }
      os << ",ok," << format_number(o.energy_last) << ',' << format_number(o.omega_hat) << ','
         << format_number(o.r_squared) << ',' << format_number(o.omega_bound) << ','
         << o.dissipation_violations << '\n';
    }
  });
  return outcomes;
}

}  // namespace poromt
