/*
 * poromt: 1D porous-elastic solid with microtemperature, P1 finite elements
 * in space and implicit Euler in time.
 *
 * All handles are opaque. Every function that can fail returns a pmt_status;
 * on failure pmt_last_error() describes the problem for the calling thread.
 */
#ifndef POROMT_POROMT_H
#define POROMT_POROMT_H

#include <stddef.h>

#if defined(_WIN32)
#define PMT_API __declspec(dllexport)
#else
#define PMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum pmt_status {
  PMT_OK = 0,
  PMT_ERR_INVALID_ARGUMENT = 2,
  PMT_ERR_IO = 3,
  PMT_ERR_PARSE = 4,
  PMT_ERR_UNKNOWN_KEY = 5,
  PMT_ERR_MISSING_KEY = 6,
  PMT_ERR_NONPOSITIVE_PARAMETER = 7,
  PMT_ERR_ELLIPTICITY_VIOLATED = 8,
  PMT_ERR_TOO_FEW_ELEMENTS = 9,
  PMT_ERR_NONFINITE_SAMPLE = 10,
  PMT_ERR_DIMENSION_MISMATCH = 11,
  PMT_ERR_SINGULAR_SYSTEM = 12,
  PMT_ERR_RESIDUAL_TOO_LARGE = 13,
  PMT_ERR_INSUFFICIENT_HISTORY = 14,
  PMT_ERR_NONPOSITIVE_ENERGY = 15,
  PMT_ERR_WINDOW_TOO_SMALL = 16,
  PMT_ERR_STEP_NOT_RECORDED = 17,
  PMT_ERR_INTERNAL = 70
} pmt_status;

typedef struct pmt_config pmt_config;
typedef struct pmt_trajectory pmt_trajectory;

typedef struct pmt_params {
  double rho, mu, b, J, delta, xi, d, alpha, kappa, k, l;
} pmt_params;

typedef struct pmt_constants {
  double cp, C1, C2, C3;
  double eps1, eps2, eps3;
  double N0, N1, N2;
  double nu1, nu2;
  double zeta[5];
  double beta, omega, M;
} pmt_constants;

typedef struct pmt_step {
  int n;
  double t;
  double energy, kinetic, accel, elastic, vel_grad, porous_grad, coupled, thermal;
  double dissipation; /* kappa |w_x|^2 + k |w|^2 */
  double lyapunov;    /* L = N1 E + F + N2 G */
  double lower_margin, upper_margin;
} pmt_step;

typedef struct pmt_decay_fit {
  double omega_hat;
  double log_intercept;
  double r_squared;
  size_t samples;
} pmt_decay_fit;

typedef struct pmt_dissipation {
  double max_scaled_residual;
  int violations;
  int first_violation; /* level index, -1 if none */
} pmt_dissipation;

#define PMT_ERROR_NORMS 6 /* e_uvel, e_phivel, e_ux, e_phix, e_phi, e_w */

typedef struct pmt_convergence {
  int levels;
  double space_orders[PMT_ERROR_NORMS];
  double time_orders[PMT_ERROR_NORMS];
} pmt_convergence;

PMT_API const char* pmt_version(void);
PMT_API const char* pmt_status_name(pmt_status status);
/* Message of the last failure on this thread; "" after a success. */
PMT_API const char* pmt_last_error(void);

PMT_API pmt_status pmt_config_parse(const char* text, pmt_config** out);
PMT_API pmt_status pmt_config_load(const char* path, pmt_config** out);
PMT_API void pmt_config_free(pmt_config* cfg);
/* Writes at most cap bytes including the terminator; *needed receives the
 * full length plus one. buf may be NULL when cap is 0. */
PMT_API pmt_status pmt_config_serialize(const pmt_config* cfg, char* buf, size_t cap,
                                        size_t* needed);
/* Assigns one key. The result is validated when the config is run. */
PMT_API pmt_status pmt_config_set(pmt_config* cfg, const char* key, const char* value);
PMT_API pmt_status pmt_config_params(const pmt_config* cfg, pmt_params* out);

PMT_API pmt_status pmt_lyapunov_constants(const pmt_params* params, pmt_constants* out);

PMT_API pmt_status pmt_run(const pmt_config* cfg, pmt_trajectory** out);
PMT_API void pmt_trajectory_free(pmt_trajectory* traj);
PMT_API size_t pmt_trajectory_step_count(const pmt_trajectory* traj);
PMT_API pmt_status pmt_trajectory_step(const pmt_trajectory* traj, size_t index, pmt_step* out);
PMT_API pmt_status pmt_trajectory_write_timeseries(const pmt_trajectory* traj, const char* path);
/* field is "u", "phi" or "w" */
PMT_API pmt_status pmt_trajectory_write_field(const pmt_trajectory* traj, const char* field,
                                              const char* path);
PMT_API pmt_status pmt_trajectory_write_report(const pmt_trajectory* traj, const char* path);
PMT_API pmt_status pmt_trajectory_decay_fit(const pmt_trajectory* traj, double tail_fraction,
                                            pmt_decay_fit* out);
PMT_API pmt_status pmt_trajectory_dissipation(const pmt_trajectory* traj, double tol_rel,
                                              pmt_dissipation* out);

/* family: "exp_sine", "mixed", "bubble" or "zero". rates_path may be NULL.
 * workers == 0 uses the hardware concurrency. */
PMT_API pmt_status pmt_converge(const pmt_config* base, const char* family, int levels,
                                unsigned workers, const char* rates_path, pmt_convergence* out);

PMT_API pmt_status pmt_decay_fit_csv(const char* path, double tail_fraction, pmt_decay_fit* out);

/* Runs the grid of a sweep config into out_dir. *failed (may be NULL)
 * receives the number of failed grid points; the status is that of the
 * first failed point, or PMT_OK. */
PMT_API pmt_status pmt_sweep(const char* path, const char* out_dir, unsigned workers,
                             size_t* runs, size_t* failed);

#ifdef __cplusplus
}
#endif

#endif
