// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "poromt/poromt.h"

namespace fs = std::filesystem;

namespace {

const char* kExitCodes =
    "Exit status:\n"
    "  0   success\n"
    "  2   InvalidArgument (also bad command-line usage)\n"
    "  3   IoError\n"
    "  4   ParseError\n"
    "  5   UnknownKey\n"
    "  6   MissingKey\n"
    "  7   NonPositiveParameter\n"
    "  8   EllipticityViolated\n"
    "  9   TooFewElements\n"
    "  10  NonFiniteSample\n"
    "  11  DimensionMismatch\n"
    "  12  SingularSystem\n"
    "  13  ResidualTooLarge\n"
    "  14  InsufficientHistory\n"
    "  15  NonPositiveEnergy\n"
    "  16  WindowTooSmall\n"
    "  17  StepNotRecorded\n"
    "  70  Internal\n";

struct Failure {
  pmt_status status;
};

void check(pmt_status status) {
  if (status != PMT_OK) throw Failure{status};
}

struct Options {
  std::string input;
  std::string positional_out;
  std::string out;
  bool quiet = false;
  int levels = 5;
  std::string family = "exp_sine";
  unsigned workers = 0;
  double tail = 0.5;

  std::string out_dir() const { return out.empty() ? positional_out : out; }
};

std::string require_out_dir(const Options& o) {
  const std::string dir = o.out_dir();
  if (dir.empty()) {
    std::fprintf(stderr, "poromt: InvalidArgument: no output directory (give it after the input or via --out)\n");
    throw Failure{PMT_ERR_INVALID_ARGUMENT};
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "poromt: IoError: cannot create '%s': %s\n", dir.c_str(), ec.message().c_str());
    throw Failure{PMT_ERR_IO};
  }
  return dir;
}

struct ConfigHandle {
  pmt_config* ptr = nullptr;
  ~ConfigHandle() { pmt_config_free(ptr); }
};

struct TrajectoryHandle {
  pmt_trajectory* ptr = nullptr;
  ~TrajectoryHandle() { pmt_trajectory_free(ptr); }
};

void cmd_run(const Options& o) {
  ConfigHandle cfg;
  check(pmt_config_load(o.input.c_str(), &cfg.ptr));
  const fs::path dir = require_out_dir(o);

  TrajectoryHandle traj;
  check(pmt_run(cfg.ptr, &traj.ptr));
  check(pmt_trajectory_write_timeseries(traj.ptr, (dir / "energy.csv").c_str()));
  for (const char* field : {"u", "phi", "w"}) {
    const fs::path path = dir / (std::string(field) + ".csv");
    check(pmt_trajectory_write_field(traj.ptr, field, path.c_str()));
  }
  check(pmt_trajectory_write_report(traj.ptr, (dir / "report.txt").c_str()));

  if (o.quiet) return;
  const size_t steps = pmt_trajectory_step_count(traj.ptr);
  pmt_step first{}, last{};
  check(pmt_trajectory_step(traj.ptr, 0, &first));
  check(pmt_trajectory_step(traj.ptr, steps - 1, &last));
  std::printf("%zu steps, E(t=%g) = %.6e, E(t=%g) = %.6e\n", steps, first.t, first.energy, last.t,
              last.energy);
  pmt_decay_fit fit{};
  if (pmt_trajectory_decay_fit(traj.ptr, o.tail, &fit) == PMT_OK) {
    std::printf("decay fit: omega_hat = %.6g, R^2 = %.6f\n", fit.omega_hat, fit.r_squared);
  }
  std::printf("wrote %s\n", dir.c_str());
}

void cmd_converge(const Options& o) {
  ConfigHandle cfg;
  check(pmt_config_load(o.input.c_str(), &cfg.ptr));
  const fs::path dir = require_out_dir(o);

  pmt_convergence report{};
  check(pmt_converge(cfg.ptr, o.family.c_str(), o.levels, o.workers, (dir / "rates.csv").c_str(),
                     &report));
  if (o.quiet) return;
  static const char* names[PMT_ERROR_NORMS] = {"e_uvel", "e_phivel", "e_ux", "e_phix", "e_phi", "e_w"};
  std::printf("%-10s %10s %10s\n", "norm", "order(h)", "order(dt)");
  for (int c = 0; c < PMT_ERROR_NORMS; ++c) {
    std::printf("%-10s %10.4f %10.4f\n", names[c], report.space_orders[c], report.time_orders[c]);
  }
  std::printf("wrote %s\n", (dir / "rates.csv").c_str());
}

void cmd_decay_fit(const Options& o) {
  pmt_decay_fit fit{};
  check(pmt_decay_fit_csv(o.input.c_str(), o.tail, &fit));
  char text[256];
  std::snprintf(text, sizeof text, "omega_hat = %.17g\nlog_intercept = %.17g\nr_squared = %.17g\nsamples = %zu\n",
                fit.omega_hat, fit.log_intercept, fit.r_squared, fit.samples);
  if (!o.out_dir().empty()) {
    const fs::path path = fs::path(require_out_dir(o)) / "decay_fit.txt";
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f || std::fputs(text, f) < 0 || std::fclose(f) != 0) {
      std::fprintf(stderr, "poromt: IoError: cannot write '%s'\n", path.c_str());
      throw Failure{PMT_ERR_IO};
    }
  }
  if (!o.quiet) std::fputs(text, stdout);
}

void cmd_sweep(const Options& o) {
  const std::string dir = require_out_dir(o);
  size_t runs = 0, failed = 0;
  const pmt_status status = pmt_sweep(o.input.c_str(), dir.c_str(), o.workers, &runs, &failed);
  if (status == PMT_OK && !o.quiet) {
    std::printf("%zu runs, summary in %s\n", runs, (fs::path(dir) / "summary.csv").c_str());
  }
  check(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Porous-elastic solid with microtemperature: simulation and verification"};
  app.footer(kExitCodes);
  app.require_subcommand(1, 1);

  Options o;
  app.add_flag("-q,--quiet", o.quiet, "Suppress progress output");

  auto add_io = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("outdir", o.positional_out, "Output directory");
    sub->add_option("-o,--out", o.out, "Output directory (overrides the positional one)");
    sub->add_flag("-q,--quiet", o.quiet, "Suppress progress output");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate a config; write energy.csv, u/phi/w.csv, report.txt");
  add_io(run, "Run config file");
  run->add_option("--tail", o.tail, "Tail fraction for the printed decay fit")->capture_default_str();

  CLI::App* converge = app.add_subcommand("converge", "Manufactured-solution convergence study; write rates.csv");
  add_io(converge, "Base run config file");
  converge->add_option("--levels", o.levels, "Refinement levels per sweep")->capture_default_str();
  converge->add_option("--family", o.family, "exp_sine, mixed, bubble or zero")->capture_default_str();
  converge->add_option("--workers", o.workers, "Worker threads (0: all cores)")->capture_default_str();

  CLI::App* decay = app.add_subcommand("decay-fit", "Fit -log E against t on the tail of an energy.csv");
  add_io(decay, "energy.csv written by run");
  decay->add_option("--tail", o.tail, "Tail fraction of samples to fit")->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid; write run_NNN/ and summary.csv");
  add_io(sweep, "Sweep config file");
  sweep->add_option("--workers", o.workers, "Worker threads (0: all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PMT_ERR_INVALID_ARGUMENT;
  }

  try {
    if (run->parsed()) cmd_run(o);
    if (converge->parsed()) cmd_converge(o);
    if (decay->parsed()) cmd_decay_fit(o);
    if (sweep->parsed()) cmd_sweep(o);
  } catch (const Failure& f) {
    const char* message = pmt_last_error();
    if (*message) std::fprintf(stderr, "poromt: %s: %s\n", pmt_status_name(f.status), message);
    return f.status;
  }
  return 0;
}
