#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fnls/errors.hpp"
#include "fnlscli/commands.hpp"
#include "fnlscli/config.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitInadmissible = 4;

fnlscli::Config load_config(const std::string& path,
                            const std::string& preset) {
  if (!path.empty() && !preset.empty())
    throw fnlscli::ConfigError("--config and --preset are exclusive");
  if (!preset.empty())
    return fnlscli::Config::parse_text("experiment.preset = " + preset);
  if (!path.empty()) return fnlscli::Config::parse_file(path);
  return fnlscli::Config::parse_text("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fnls: pseudospectral laboratory for the focusing fractional "
      "nonlinear Schrodinger equation on a periodic interval"};
  app.require_subcommand(1);

  fnlscli::GlobalOptions global;
  std::string out_dir = "out";
  app.add_option("--out", out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads for parameter sweeps")
      ->capture_default_str();
  app.add_flag("--quiet", global.quiet, "Suppress progress output");

  std::string profile_config;
  CLI::App* profile =
      app.add_subcommand("profile", "Solve a solitary-wave profile");
  profile->add_option("--config", profile_config,
                      "Config file (wave.*, model.*, run.*, profile.*)");

  std::string run_config;
  std::string run_preset;
  CLI::App* run = app.add_subcommand("run", "Integrate an experiment");
  run->add_option("--config", run_config, "Config file");
  run->add_option("--preset", run_preset,
                  "Experiment preset name (see `list-presets`)");

  fnlscli::ConvergenceOptions conv;
  CLI::App* convergence = app.add_subcommand(
      "convergence", "Temporal convergence study on the cubic soliton");
  convergence->add_option("--dts", conv.dts, "Step sizes")
      ->delimiter(',')
      ->capture_default_str();
  convergence->add_option("--modes", conv.modes, "Fourier modes N")
      ->capture_default_str();
  convergence->add_option("--half-length", conv.half_length, "Domain half length L")
      ->capture_default_str();
  convergence->add_option("--duration", conv.duration, "Final time T")
      ->capture_default_str();
  convergence->add_option("--sigma", conv.sigma, "Nonlinearity exponent")
      ->capture_default_str();
  convergence->add_option("--lambda1", conv.lambda1, "Wave frequency")
      ->capture_default_str();
  convergence->add_option("--lambda2", conv.lambda2, "Wave speed")
      ->capture_default_str();
  convergence->add_option("--stage-tol", conv.stage_tol, "Stage tolerance")
      ->capture_default_str();
  convergence
      ->add_option("--stage-max-iter", conv.stage_max_iter,
                   "Stage iteration cap")
      ->capture_default_str();

  fnlscli::DispersionOptions disp;
  CLI::App* dispersion = app.add_subcommand(
      "dispersion", "Oscillatory-tail direction table and thresholds");
  dispersion->add_option("--cs", disp.cs, "Frame speed")
      ->capture_default_str();
  dispersion->add_option("--s", disp.s, "Dispersion order")
      ->capture_default_str();
  dispersion->add_option("--k-lo", disp.k_lo, "Smallest wavenumber")
      ->capture_default_str();
  dispersion->add_option("--k-hi", disp.k_hi, "Largest wavenumber")
      ->capture_default_str();
  dispersion->add_option("--count", disp.count, "Sample count")
      ->capture_default_str();
  dispersion->add_option("--lambda1", disp.lambda1,
                         "Frequency for the essential-spectrum table")
      ->capture_default_str();
  dispersion->add_flag("--no-essential",
                       [&disp](std::int64_t) { disp.essential = false; },
                       "Skip the essential-spectrum table");

  CLI::App* presets =
      app.add_subcommand("list-presets", "List experiment preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  global.out_dir = out_dir;

  try {
    if (profile->parsed())
      return fnlscli::cmd_profile(load_config(profile_config, ""), global);
    if (run->parsed())
      return fnlscli::cmd_run(load_config(run_config, run_preset), global);
    if (convergence->parsed()) return fnlscli::cmd_convergence(conv, global);
    if (dispersion->parsed()) return fnlscli::cmd_dispersion(disp, global);
    if (presets->parsed()) {
      for (const std::string& name : fnls::preset_names())
        std::cout << name << '\n';
      return 0;
    }
  } catch (const fnlscli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fnls::Inadmissible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInadmissible;
  } catch (const fnls::NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const fnls::Stagnation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
