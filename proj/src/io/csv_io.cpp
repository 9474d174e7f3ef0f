#include "csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace poromt {

namespace fs = std::filesystem;

FieldName parse_field_name(const std::string& text) {
  if (text == "u") return FieldName::U;
  if (text == "phi") return FieldName::Phi;
  if (text == "w") return FieldName::W;
  throw Error(ErrorCode::InvalidArgument, "unknown field '" + text + "' (expected u, phi or w)");
}

const char* field_label(FieldName field) noexcept {
  switch (field) {
    case FieldName::U: return "u";
    case FieldName::Phi: return "phi";
    case FieldName::W: return "w";
  }
  return "?";
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::string partial = path + ".partial";
  try {
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::Io, "cannot open '" + partial + "' for writing");
      body(out);
      out.flush();
      if (!out) throw Error(ErrorCode::Io, "write to '" + partial + "' failed");
    }
    std::error_code ec;
    fs::rename(partial, path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot rename '" + partial + "': " + ec.message());
  } catch (...) {
    std::error_code ignored;
    fs::remove(partial, ignored);
    throw;
  }
}

void write_timeseries(std::ostream& os, const Trajectory& traj) {
  os << kTimeseriesHeader << '\n';
  for (const StepRecord& r : traj.steps) {
    const EnergyBreakdown& e = r.energy;
    os << format_number(r.t) << ',' << format_number(e.total) << ',' << format_number(e.kinetic)
       << ',' << format_number(e.accel) << ',' << format_number(e.elastic) << ','
       << format_number(e.vel_grad) << ',' << format_number(e.porous_grad) << ','
       << format_number(e.coupled) << ',' << format_number(e.thermal) << ',';
    if (e.total > 0.0) os << format_number(-std::log(e.total));
    os << ',' << format_number(r.dissipation_rate) << '\n';
  }
}

void write_field(std::ostream& os, const Trajectory& traj, FieldName field) {
  os << "t,x,value\n";
  const Mesh1D& mesh = traj.mesh;
  for (const Frame& frame : traj.frames) {
    const NodalVector& values = field == FieldName::U   ? frame.u
                                : field == FieldName::Phi ? frame.phi
                                                          : frame.w;
    const std::string t = format_number(frame.t);
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
      const bool boundary = i == 0 || i + 1 == mesh.nodes.size();
      os << t << ',' << format_number(mesh.nodes[i]) << ','
         << (boundary ? std::string("0") : format_number(values[i - 1])) << '\n';
    }
  }
}

void write_timeseries_csv(const Trajectory& traj, const std::string& path) {
  if (traj.steps.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory has no steps");
  write_file_atomically(path, [&](std::ostream& os) { write_timeseries(os, traj); });
}

void write_field_csv(const Trajectory& traj, FieldName field, const std::string& path) {
  if (traj.frames.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory has no recorded fields");
  write_file_atomically(path, [&](std::ostream& os) { write_field(os, traj, field); });
}

EnergySeries read_timeseries_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTimeseriesHeader) {
    throw Error(ErrorCode::Parse, path + ": line 1: unexpected header");
  }

  EnergySeries series;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string t_cell, e_cell;
    std::getline(cells, t_cell, ',');
    std::getline(cells, e_cell, ',');
    try {
      std::size_t used_t = 0, used_e = 0;
      const double t = std::stod(t_cell, &used_t);
      const double e = std::stod(e_cell, &used_e);
      if (used_t != t_cell.size() || used_e != e_cell.size()) throw std::invalid_argument("trailing");
      series.t.push_back(t);
      series.energy.push_back(e);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, path + ": line " + std::to_string(number) + ": bad number");
    }
  }
  return series;
}

std::string format_decay_fit(const DecayFit& fit) {
  std::ostringstream os;
  os.precision(17);
  os << "omega_hat = " << fit.omega_hat << '\n'
     << "log_intercept = " << fit.log_intercept << '\n'
     << "r_squared = " << fit.r_squared << '\n'
     << "samples = " << fit.samples << '\n';
  return os.str();
}

std::string run_report(const RunConfig& cfg, const Trajectory& traj) {
  std::ostringstream os;
  os.precision(17);
  os << "# run\n"
     << "s = " << cfg.s << '\n'
     << "h = " << traj.mesh.h << '\n'
     << "dt = " << cfg.dt << '\n'
     << "t_final = " << cfg.final_level() * cfg.dt << '\n'
     << "solves = " << traj.solves << '\n'
     << "max_relative_residual = " << traj.max_residual << '\n';

  os << "\n# lyapunov constants\n" << format_constants(traj.constants);

  os << "\n# energy\n";
  if (!traj.steps.empty()) {
    os << "E_first = " << traj.steps.front().energy.total << '\n'
       << "E_last = " << traj.steps.back().energy.total << '\n';
  }
  const DissipationReport diss = dissipation_check(traj, traj.params);
  os << "dissipation_max_scaled_residual = " << diss.max_scaled << '\n'
     << "dissipation_violations = " << diss.violations << '\n';

  double min_margin = 0.0;
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const double m = traj.steps[i].lyapunov.margin();
    if (i == 0 || m < min_margin) min_margin = m;
  }
  os << "lyapunov_min_margin = " << min_margin << '\n';

  os << "\n# decay fit (last " << kDefaultTailFraction * 100 << "% of steps)\n";
  std::vector<double> t, e;
  for (const StepRecord& r : traj.steps) {
    t.push_back(r.t);
    e.push_back(r.energy.total);
  }
  try {
    os << format_decay_fit(fit_decay_rate(t, e, kDefaultTailFraction));
  } catch (const Error& err) {
    os << "unavailable: " << to_string(err.code()) << ": " << err.what() << '\n';
  }
  return os.str();
}

void write_rates(std::ostream& os, const ConvergenceReport& report) {
  os << "sweep,level,s,h,dt";
  for (const char* name : kErrorNames) os << ',' << name;
  os << '\n';
  const std::pair<const char*, const ConvergenceSweep*> sweeps[] = {{"space", &report.space},
                                                                    {"time", &report.time}};
  for (const auto& [label, sweep] : sweeps) {
    for (std::size_t j = 0; j < sweep->levels.size(); ++j) {
      const ConvergenceLevel& level = sweep->levels[j];
      os << label << ',' << j << ',' << level.s << ',' << format_number(level.h) << ','
         << format_number(level.dt);
      for (double e : level.errors.as_array()) os << ',' << format_number(e);
      os << '\n';
    }
  }
  for (const auto& [label, sweep] : sweeps) {
    os << label << ",order,,,";
    for (double order : sweep->orders) os << ',' << format_number(order);
    os << '\n';
  }
}

void write_rates_csv(const ConvergenceReport& report, const std::string& path) {
  write_file_atomically(path, [&](std::ostream& os) { write_rates(os, report); });
}

}  // namespace poromt
