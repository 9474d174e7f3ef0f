#include "poromt/poromt.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "config.hpp"
#include "csv_io.hpp"
#include "errors.hpp"
#include "sweep.hpp"
#include "verification.hpp"

struct pmt_config {
  poromt::RunConfig cfg;
};

struct pmt_trajectory {
  poromt::RunConfig cfg;
  poromt::Trajectory traj;
};

namespace {

using poromt::ErrorCode;

thread_local std::string g_last_error;

pmt_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return PMT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return PMT_ERR_IO;
    case ErrorCode::Parse: return PMT_ERR_PARSE;
    case ErrorCode::UnknownKey: return PMT_ERR_UNKNOWN_KEY;
    case ErrorCode::MissingKey: return PMT_ERR_MISSING_KEY;
    case ErrorCode::NonPositiveParameter: return PMT_ERR_NONPOSITIVE_PARAMETER;
    case ErrorCode::EllipticityViolated: return PMT_ERR_ELLIPTICITY_VIOLATED;
    case ErrorCode::TooFewElements: return PMT_ERR_TOO_FEW_ELEMENTS;
    case ErrorCode::NonFiniteSample: return PMT_ERR_NONFINITE_SAMPLE;
    case ErrorCode::DimensionMismatch: return PMT_ERR_DIMENSION_MISMATCH;
    case ErrorCode::SingularSystem: return PMT_ERR_SINGULAR_SYSTEM;
    case ErrorCode::ResidualTooLarge: return PMT_ERR_RESIDUAL_TOO_LARGE;
    case ErrorCode::InsufficientHistory: return PMT_ERR_INSUFFICIENT_HISTORY;
    case ErrorCode::NonPositiveEnergy: return PMT_ERR_NONPOSITIVE_ENERGY;
    case ErrorCode::WindowTooSmall: return PMT_ERR_WINDOW_TOO_SMALL;
    case ErrorCode::StepNotRecorded: return PMT_ERR_STEP_NOT_RECORDED;
  }
  return PMT_ERR_INTERNAL;
}

pmt_status fail(pmt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
pmt_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const poromt::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PMT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PMT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PMT_ERR_INTERNAL, "unknown failure");
  }
}

pmt_status null_argument(const char* name) {
  return fail(PMT_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

poromt::PhysicalParams from_c(const pmt_params& p) {
  return {p.rho, p.mu, p.b, p.J, p.delta, p.xi, p.d, p.alpha, p.kappa, p.k, p.l};
}

void fill_fit(const poromt::DecayFit& fit, pmt_decay_fit* out) {
  out->omega_hat = fit.omega_hat;
  out->log_intercept = fit.log_intercept;
  out->r_squared = fit.r_squared;
  out->samples = fit.samples;
}

}  // namespace

extern "C" {

const char* pmt_version(void) { return "1.0.0"; }

const char* pmt_status_name(pmt_status status) {
  switch (status) {
    case PMT_OK: return "Ok";
    case PMT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PMT_ERR_IO: return "IoError";
    case PMT_ERR_PARSE: return "ParseError";
    case PMT_ERR_UNKNOWN_KEY: return "UnknownKey";
    case PMT_ERR_MISSING_KEY: return "MissingKey";
    case PMT_ERR_NONPOSITIVE_PARAMETER: return "NonPositiveParameter";
    case PMT_ERR_ELLIPTICITY_VIOLATED: return "EllipticityViolated";
    case PMT_ERR_TOO_FEW_ELEMENTS: return "TooFewElements";
    case PMT_ERR_NONFINITE_SAMPLE: return "NonFiniteSample";
    case PMT_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case PMT_ERR_SINGULAR_SYSTEM: return "SingularSystem";
    case PMT_ERR_RESIDUAL_TOO_LARGE: return "ResidualTooLarge";
    case PMT_ERR_INSUFFICIENT_HISTORY: return "InsufficientHistory";
    case PMT_ERR_NONPOSITIVE_ENERGY: return "NonPositiveEnergy";
    case PMT_ERR_WINDOW_TOO_SMALL: return "WindowTooSmall";
    case PMT_ERR_STEP_NOT_RECORDED: return "StepNotRecorded";
    case PMT_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* pmt_last_error(void) { return g_last_error.c_str(); }

pmt_status pmt_config_parse(const char* text, pmt_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new pmt_config{poromt::parse_config(text)};
    return PMT_OK;
  });
}

pmt_status pmt_config_load(const char* path, pmt_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new pmt_config{poromt::load_config(path)};
    return PMT_OK;
  });
}

void pmt_config_free(pmt_config* cfg) { delete cfg; }

pmt_status pmt_config_serialize(const pmt_config* cfg, char* buf, size_t cap, size_t* needed) {
  if (!cfg) return null_argument("cfg");
  if (!buf && cap > 0) return null_argument("buf");
  return guarded([&] {
    const std::string text = poromt::serialize_config(cfg->cfg);
    if (needed) *needed = text.size() + 1;
    if (cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
    return PMT_OK;
  });
}

pmt_status pmt_config_set(pmt_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_argument("cfg");
  if (!key) return null_argument("key");
  if (!value) return null_argument("value");
  return guarded([&] {
    poromt::RunConfig updated = cfg->cfg;
    poromt::set_config_value(updated, key, value);
    cfg->cfg = updated;
    return PMT_OK;
  });
}

pmt_status pmt_config_params(const pmt_config* cfg, pmt_params* out) {
  if (!cfg) return null_argument("cfg");
  if (!out) return null_argument("out");
  const poromt::PhysicalParams& p = cfg->cfg.params;
  *out = {p.rho, p.mu, p.b, p.J, p.delta, p.xi, p.d, p.alpha, p.kappa, p.k, p.l};
  g_last_error.clear();
  return PMT_OK;
}

pmt_status pmt_lyapunov_constants(const pmt_params* params, pmt_constants* out) {
  if (!params) return null_argument("params");
  if (!out) return null_argument("out");
  return guarded([&] {
    const poromt::LyapunovConstants c =
        poromt::lyapunov_constants(poromt::validate_params(from_c(*params)));
    *out = {};
    out->cp = c.cp;
    out->C1 = c.C1;
    out->C2 = c.C2;
    out->C3 = c.C3;
    out->eps1 = c.eps1;
    out->eps2 = c.eps2;
    out->eps3 = c.eps3;
    out->N0 = c.N0;
    out->N1 = c.N1;
    out->N2 = c.N2;
    out->nu1 = c.nu1;
    out->nu2 = c.nu2;
    for (int i = 0; i < 5; ++i) out->zeta[i] = c.zeta[static_cast<size_t>(i)];
    out->beta = c.beta;
    out->omega = c.omega;
    out->M = c.M;
    return PMT_OK;
  });
}

pmt_status pmt_run(const pmt_config* cfg, pmt_trajectory** out) {
  if (!cfg) return null_argument("cfg");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new pmt_trajectory{cfg->cfg, poromt::run(cfg->cfg)};
    return PMT_OK;
  });
}

void pmt_trajectory_free(pmt_trajectory* traj) { delete traj; }

size_t pmt_trajectory_step_count(const pmt_trajectory* traj) {
  return traj ? traj->traj.steps.size() : 0;
}

pmt_status pmt_trajectory_step(const pmt_trajectory* traj, size_t index, pmt_step* out) {
  if (!traj) return null_argument("traj");
  if (!out) return null_argument("out");
  if (index >= traj->traj.steps.size()) {
    return fail(PMT_ERR_INVALID_ARGUMENT, "step index " + std::to_string(index) + " out of range");
  }
  const poromt::StepRecord& r = traj->traj.steps[index];
  const poromt::EnergyBreakdown& e = r.energy;
  *out = {r.n,         r.t,         e.total,          e.kinetic,
          e.accel,     e.elastic,   e.vel_grad,       e.porous_grad,
          e.coupled,   e.thermal,   r.dissipation_rate, r.lyapunov.L,
          r.lyapunov.lower_margin, r.lyapunov.upper_margin};
  g_last_error.clear();
  return PMT_OK;
}

pmt_status pmt_trajectory_write_timeseries(const pmt_trajectory* traj, const char* path) {
  if (!traj) return null_argument("traj");
  if (!path) return null_argument("path");
  return guarded([&] {
    poromt::write_timeseries_csv(traj->traj, path);
    return PMT_OK;
  });
}

pmt_status pmt_trajectory_write_field(const pmt_trajectory* traj, const char* field,
                                      const char* path) {
  if (!traj) return null_argument("traj");
  if (!field) return null_argument("field");
  if (!path) return null_argument("path");
  return guarded([&] {
    poromt::write_field_csv(traj->traj, poromt::parse_field_name(field), path);
    return PMT_OK;
  });
}

pmt_status pmt_trajectory_write_report(const pmt_trajectory* traj, const char* path) {
  if (!traj) return null_argument("traj");
  if (!path) return null_argument("path");
  return guarded([&] {
    const std::string report = poromt::run_report(traj->cfg, traj->traj);
    poromt::write_file_atomically(path, [&](std::ostream& os) { os << report; });
    return PMT_OK;
  });
}

pmt_status pmt_trajectory_decay_fit(const pmt_trajectory* traj, double tail_fraction,
                                    pmt_decay_fit* out) {
  if (!traj) return null_argument("traj");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<double> t, e;
    for (const poromt::StepRecord& r : traj->traj.steps) {
      t.push_back(r.t);
      e.push_back(r.energy.total);
    }
    fill_fit(poromt::fit_decay_rate(t, e, tail_fraction), out);
    return PMT_OK;
  });
}

pmt_status pmt_trajectory_dissipation(const pmt_trajectory* traj, double tol_rel,
                                      pmt_dissipation* out) {
  if (!traj) return null_argument("traj");
  if (!out) return null_argument("out");
  return guarded([&] {
    const poromt::DissipationReport r =
        poromt::dissipation_check(traj->traj, traj->traj.params, tol_rel);
    out->max_scaled_residual = r.max_scaled;
    out->violations = r.violations;
    out->first_violation = r.first_violation;
    return PMT_OK;
  });
}

pmt_status pmt_converge(const pmt_config* base, const char* family, int levels, unsigned workers,
                        const char* rates_path, pmt_convergence* out) {
  if (!base) return null_argument("base");
  if (!family) return null_argument("family");
  return guarded([&] {
    const auto ms = poromt::ManufacturedSolution::by_name(family, base->cfg.params.l);
    const poromt::ConvergenceReport report =
        poromt::convergence_study(base->cfg, ms, levels, workers);
    if (rates_path) poromt::write_rates_csv(report, rates_path);
    if (out) {
      out->levels = levels;
      for (size_t c = 0; c < PMT_ERROR_NORMS; ++c) {
        out->space_orders[c] = report.space.orders[c];
        out->time_orders[c] = report.time.orders[c];
      }
    }
    return PMT_OK;
  });
}

pmt_status pmt_decay_fit_csv(const char* path, double tail_fraction, pmt_decay_fit* out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    const poromt::EnergySeries series = poromt::read_timeseries_csv(path);
    fill_fit(poromt::fit_decay_rate(series.t, series.energy, tail_fraction), out);
    return PMT_OK;
  });
}

pmt_status pmt_sweep(const char* path, const char* out_dir, unsigned workers, size_t* runs,
                     size_t* failed) {
  if (!path) return null_argument("path");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    const poromt::SweepSpec spec = poromt::load_sweep_config(path);
    const auto outcomes = poromt::run_sweep(spec, out_dir, workers);
    size_t failures = 0;
    pmt_status first = PMT_OK;
    std::string message;
    for (const auto& o : outcomes) {
      if (!o.error) continue;
      if (failures++ == 0) {
        first = status_of(*o.error);
        message = "run " + std::to_string(o.point.index) + ": " + o.message;
      }
    }
    if (runs) *runs = outcomes.size();
    if (failed) *failed = failures;
    if (first != PMT_OK) return fail(first, message);
    return PMT_OK;
  });
}

}  // extern "C"
