#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fnls/experiments.hpp"
#include "fnls/integrator.hpp"
#include "fnlscli/config.hpp"

namespace fnlscli {

struct GlobalOptions {
  std::filesystem::path out_dir = "out";
  int threads = 1;
  bool quiet = false;
};

// Everything cmd_run needs, decoded from a config (or a preset name plus
// run-control overrides).
struct RunSetup {
  fnls::ExperimentSpec spec;
  fnls::StepperConfig stepper;
  std::vector<double> snapshot_times;
  std::optional<std::string> preset_name;
  int speed_window = 11;
};

RunSetup run_setup_from_config(const Config& cfg);

// Solves a solitary-wave profile and writes profile.csv plus a report.
int cmd_profile(const Config& cfg, const GlobalOptions& g);

// Builds the configured experiment, integrates it, and writes series.csv,
// snapshots, and manifest.txt.
int cmd_run(const Config& cfg, const GlobalOptions& g);

struct ConvergenceOptions {
  std::vector<double> dts = {2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3};
  std::size_t modes = 4096;
  double half_length = 128.0;
  double duration = 100.0;
  double sigma = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 0.25;
  double stage_tol = 1e-13;
  int stage_max_iter = 100;
};

struct ConvergenceReport {
  std::vector<double> dt_values;
  std::vector<double> v_errors;
  std::vector<double> w_errors;
  std::vector<double> v_rates;  // between consecutive dt values
  std::vector<double> w_rates;
};

// Marches the closed-form cubic soliton at each step size and measures the
// final-time error against the transported profile.
ConvergenceReport convergence_study(const ConvergenceOptions& opt,
                                    int threads = 1);

int cmd_convergence(const ConvergenceOptions& opt, const GlobalOptions& g);

struct DispersionOptions {
  double cs = 0.25;
  double s = 0.8;
  double k_lo = 0.2;
  double k_hi = 20.0;
  std::size_t count = 100;
  bool essential = true;
  double lambda1 = 1.0;
};

int cmd_dispersion(const DispersionOptions& opt, const GlobalOptions& g);

}  // namespace fnlscli
