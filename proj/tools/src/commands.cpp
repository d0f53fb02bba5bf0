#include "fnlscli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>

#include "fnls/dispersion.hpp"
#include "fnls/errors.hpp"
#include "fnls/format.hpp"
#include "fnls/observables.hpp"
#include "fnls/transforms.hpp"
#include "fnls/waves.hpp"
#include "fnlscli/io.hpp"

namespace fnlscli {

namespace fs = std::filesystem;
using fnls::format_full;
using fnls::format_shortest;

namespace {

// Step counts past this leave fixed-point stage solves poorly conditioned
// on the finest retained modes; the run proceeds but the user is told.
constexpr double kStiffnessBudget = 200.0;

fnls::Component parse_component(const Config& cfg, const std::string& key) {
  const std::string v = cfg.get_string(key, std::string("v"));
  if (v == "v") return fnls::Component::real_part;
  if (v == "w") return fnls::Component::imag_part;
  throw ConfigError("key '" + key + "' must be v or w");
}

fnls::WaveParams wave_from_config(const Config& cfg) {
  const fnls::ModelParams model(cfg.get_double("model.s", 0.8),
                                cfg.get_double("model.sigma", 1.0));
  const double lambda1 = cfg.get_double("wave.lambda1", 1.0);
  const double lambda2 = cfg.get_double("wave.lambda2", 0.25);
  const double x0 = cfg.get_double("wave.x0", 0.0);
  const double theta0 = cfg.get_double("wave.theta0", 0.0);
  const std::string phase = cfg.get_string("wave.phase", std::string("linear"));
  if (phase == "linear")
    return fnls::WaveParams::traveling(model, lambda1, lambda2, x0, theta0);
  if (phase == "quadratic")
    return fnls::WaveParams::chirped(model, lambda1, lambda2, x0, theta0);
  throw ConfigError("wave.phase must be linear or quadratic");
}

fnls::RunControls run_controls_from_config(const Config& cfg,
                                           const fnls::RunControls& base) {
  fnls::RunControls run = base;
  run.modes = cfg.get_size("run.modes", run.modes);
  run.half_length = cfg.get_double("run.half_length", run.half_length);
  run.dt = cfg.get_double("run.dt", run.dt);
  run.duration = cfg.get_double("run.duration", run.duration);
  run.cadence = cfg.get_double("run.cadence", run.cadence);
  return run;
}

std::string component_name(fnls::Component c) {
  return c == fnls::Component::real_part ? "v" : "w";
}

void echo_experiment(Manifest& m, const fnls::ExperimentSpec& spec) {
  if (const auto* a = std::get_if<fnls::AmplitudeScaleSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("amplitude-scale"));
    m.set("experiment.a1", a->a1);
    m.set("experiment.a2", a->a2);
  } else if (const auto* nz = std::get_if<fnls::NoiseSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("noise"));
    m.set("experiment.target", component_name(nz->target));
    m.set("experiment.magnitude", nz->magnitude);
  } else if (const auto* ns = std::get_if<fnls::NonsymmetricSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("nonsymmetric"));
    m.set("experiment.target", component_name(ns->target));
    m.set("experiment.alpha", ns->alpha);
  } else if (const auto* ga = std::get_if<fnls::GaussianSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("gaussian"));
    m.set("experiment.a1", ga->a1);
    m.set("experiment.a2", ga->a2);
  } else if (const auto* sp = std::get_if<fnls::SuperpositionSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("superposition"));
    std::string centers;
    std::string lambda2s;
    for (const fnls::SuperposedWave& w : sp->waves) {
      if (!centers.empty()) {
        centers += ',';
        lambda2s += ',';
      }
      centers += format_shortest(w.center);
      lambda2s += format_shortest(w.params.lambda2);
    }
    m.set("experiment.centers", centers);
    m.set("experiment.lambda2s", lambda2s);
  } else if (const auto* se = std::get_if<fnls::SPerturbSpec>(&spec.kind)) {
    m.set("experiment.kind", std::string("s-perturb"));
    m.set("experiment.eps", se->eps);
  }
}

}  // namespace

RunSetup run_setup_from_config(const Config& cfg) {
  RunSetup setup{
      [&]() -> fnls::ExperimentSpec {
        if (cfg.has("experiment.preset")) {
          fnls::ExperimentSpec spec =
              fnls::preset(cfg.get_string("experiment.preset"));
          spec.run = run_controls_from_config(cfg, spec.run);
          spec.profile_tol = cfg.get_double("profile.tol", spec.profile_tol);
          return spec;
        }
        const fnls::WaveParams wave = wave_from_config(cfg);
        const std::string kind = cfg.get_string("experiment.kind");
        fnls::ExperimentKind ek;
        if (kind == "amplitude-scale") {
          ek = fnls::AmplitudeScaleSpec{cfg.get_double("experiment.a1", 1.1),
                                        cfg.get_double("experiment.a2", 1.0)};
        } else if (kind == "noise") {
          ek = fnls::NoiseSpec{
              parse_component(cfg, "experiment.target"),
              cfg.get_double("experiment.magnitude", 1e5)};
        } else if (kind == "nonsymmetric") {
          ek = fnls::NonsymmetricSpec{parse_component(cfg, "experiment.target"),
                                      cfg.get_double("experiment.alpha", 3.0)};
        } else if (kind == "gaussian") {
          ek = fnls::GaussianSpec{cfg.get_double("experiment.a1", 1.0),
                                  cfg.get_double("experiment.a2", 0.01)};
        } else if (kind == "s-perturb") {
          ek = fnls::SPerturbSpec{cfg.get_double("experiment.eps", 0.01)};
        } else if (kind == "superposition") {
          const std::vector<double> centers =
              cfg.get_double_list("experiment.centers");
          const std::vector<double> lambda2s =
              cfg.get_double_list("experiment.lambda2s");
          if (centers.size() != lambda2s.size())
            throw ConfigError(
                "experiment.centers and experiment.lambda2s differ in length");
          fnls::SuperpositionSpec sup;
          for (std::size_t i = 0; i < centers.size(); ++i) {
            sup.waves.push_back(fnls::SuperposedWave{
                fnls::WaveParams::traveling(wave.model, wave.lambda1,
                                            lambda2s[i]),
                centers[i]});
          }
          ek = std::move(sup);
        } else {
          throw ConfigError("unknown experiment.kind: " + kind);
        }
        return fnls::ExperimentSpec(
            std::move(ek), wave, run_controls_from_config(cfg, {}),
            cfg.get_double("profile.tol", 1e-10));
      }(),
      fnls::StepperConfig{},
      {},
      {},
      11};

  if (cfg.has("experiment.preset"))
    setup.preset_name = cfg.get_string("experiment.preset");
  setup.stepper.dt = setup.spec.run.dt;
  setup.stepper.stage_tol = cfg.get_double("stepper.stage_tol", 1e-13);
  setup.stepper.stage_max_iter = cfg.get_int("stepper.stage_max_iter", 100);
  setup.snapshot_times = cfg.get_double_list(
      "run.snapshots", std::vector<double>{0.0, setup.spec.run.duration});
  setup.speed_window = cfg.get_int("run.speed_window", 11);
  cfg.require_fully_consumed();
  return setup;
}

int cmd_profile(const Config& cfg, const GlobalOptions& g) {
  const fnls::WaveParams wave = wave_from_config(cfg);
  const std::size_t modes = cfg.get_size("run.modes", 4096);
  const double half_length = cfg.get_double("run.half_length", 1024.0);
  const double tol = cfg.get_double("profile.tol", 1e-10);
  const int max_iter = cfg.get_int("profile.max_iter", 10000);
  const double decay_lo = cfg.get_double("profile.decay_lo", 50.0);
  const double decay_hi = cfg.get_double("profile.decay_hi", 300.0);
  cfg.require_fully_consumed();

  fnls::GridPtr grid = fnls::make_grid(half_length, modes);
  const fnls::Profile prof = fnls::solve_profile(wave, grid, tol, max_iter);
  const fnls::Peak peak = fnls::peak_locate(prof.u0);

  fs::create_directories(g.out_dir);
  write_snapshot_csv(g.out_dir / "profile.csv", prof.u0);

  Manifest report;
  report.set("command", std::string("profile"));
  report.set("model.s", wave.model.s);
  report.set("model.sigma", wave.model.sigma);
  report.set("wave.lambda1", wave.lambda1);
  report.set("wave.lambda2", wave.lambda2);
  report.set("wave.x0", wave.x0);
  report.set("wave.theta0", wave.theta0);
  report.set("wave.phase", std::string(wave.phase.kind ==
                                               fnls::Phase::Kind::linear
                                           ? "linear"
                                           : "quadratic"));
  report.set("wave.phase_slope", wave.phase.slope);
  report.set("run.modes", modes);
  report.set("run.half_length", half_length);
  report.set("profile.residual", prof.residual);
  report.set("profile.rho_max", peak.amplitude);
  report.set("profile.x_peak", peak.position);
  report.set("profile.mass",
             fnls::invariants(prof.u0, wave.model).mass);
  std::string decay_line;
  try {
    const fnls::DecayFit fit = fnls::decay_fit(prof, decay_lo, decay_hi);
    report.set("decay.window_lo", decay_lo);
    report.set("decay.window_hi", decay_hi);
    report.set("decay.prefactor", fit.prefactor);
    report.set("decay.exponent", fit.exponent);
    report.set("decay.rms_log_residual", fit.rms_log_residual);
    decay_line = "decay exponent " + format_shortest(fit.exponent) +
                 " (prefactor " + format_shortest(fit.prefactor) + ")";
  } catch (const std::invalid_argument& e) {
    report.set("decay.rejected", std::string(e.what()));
    decay_line = std::string("decay fit rejected: ") + e.what();
  }
  report.write(g.out_dir / "profile.txt");

  if (!g.quiet) {
    std::cout << "profile converged: residual " << format_shortest(prof.residual)
              << ", rho_max " << format_shortest(peak.amplitude) << " at x = "
              << format_shortest(peak.position) << '\n'
              << decay_line << '\n'
              << "wrote " << (g.out_dir / "profile.csv").string() << '\n';
  }
  return 0;
}

int cmd_run(const Config& cfg, const GlobalOptions& g) {
  RunSetup setup = run_setup_from_config(cfg);
  const fnls::RunControls& run = setup.spec.run;

  const double stiffness =
      static_cast<double>(run.modes) * run.dt;
  const bool stiff = stiffness > kStiffnessBudget;
  if (stiff && !g.quiet)
    std::cerr << "warning: modes * dt = " << format_shortest(stiffness)
              << " exceeds " << format_shortest(kStiffnessBudget)
              << "; stage iterations may converge slowly or fail\n";

  fnls::BuiltExperiment built = fnls::build_experiment(setup.spec);
  if (!g.quiet)
    for (const std::string& note : built.notes)
      std::cerr << "note: " << note << '\n';

  fs::create_directories(g.out_dir);

  SeriesRecorder recorder(built.model, setup.speed_window);
  std::vector<double> snapshot_queue = setup.snapshot_times;
  std::sort(snapshot_queue.begin(), snapshot_queue.end());
  snapshot_queue.erase(
      std::unique(snapshot_queue.begin(), snapshot_queue.end()),
      snapshot_queue.end());
  std::size_t snapshot_cursor = 0;

  fnls::ObserverSet obs;
  obs.add_cadence(run.cadence, [&](double t, const fnls::ComplexField& u) {
    recorder.record(t, u);
  });
  obs.add_at(snapshot_queue, [&](double, const fnls::ComplexField& u) {
    const double requested = snapshot_queue[snapshot_cursor++];
    write_snapshot_csv(
        g.out_dir / ("u_t" + format_shortest(requested) + ".csv"), u);
  });

  fnls::integrate(built.initial, run.duration, setup.stepper, built.model,
                  obs);

  const std::vector<SeriesRow> rows = recorder.finish();
  write_series_csv(g.out_dir / "series.csv", rows);

  Manifest manifest;
  manifest.set("command", std::string("run"));
  if (setup.preset_name) manifest.set("experiment.preset", *setup.preset_name);
  echo_experiment(manifest, setup.spec);
  manifest.set("model.s", built.model.s);
  manifest.set("model.sigma", built.model.sigma);
  manifest.set("wave.lambda1", setup.spec.wave.lambda1);
  manifest.set("wave.lambda2", setup.spec.wave.lambda2);
  manifest.set("wave.x0", setup.spec.wave.x0);
  manifest.set("wave.theta0", setup.spec.wave.theta0);
  manifest.set("run.modes", run.modes);
  manifest.set("run.half_length", run.half_length);
  manifest.set("run.dt", run.dt);
  manifest.set("run.duration", run.duration);
  manifest.set("run.cadence", run.cadence);
  manifest.set("run.speed_window", static_cast<std::size_t>(setup.speed_window));
  manifest.set("stepper.stage_tol", setup.stepper.stage_tol);
  manifest.set("stepper.stage_max_iter",
               static_cast<std::size_t>(setup.stepper.stage_max_iter));
  const fnls::CompositionCoefficients cc =
      fnls::CompositionCoefficients::triple_jump();
  manifest.set("coefficients.b1", cc.b[0]);
  manifest.set("coefficients.b2", cc.b[1]);
  manifest.set("coefficients.b3", cc.b[2]);
  if (built.base) manifest.set("profile.residual", built.base->residual);
  for (const std::string& note : built.notes) manifest.note(note);
  if (stiff)
    manifest.note("modes * dt = " + format_shortest(stiffness) +
                  " exceeds the stage-iteration budget " +
                  format_shortest(kStiffnessBudget));
  manifest.write(g.out_dir / "manifest.txt");

  if (!g.quiet && !rows.empty()) {
    const SeriesRow& first = rows.front();
    const SeriesRow& last = rows.back();
    std::cout << "integrated to t = " << format_shortest(last.t) << " ("
              << rows.size() << " samples)\n"
              << "mass drift " << format_shortest(std::abs(last.mass - first.mass))
              << ", energy drift "
              << format_shortest(std::abs(last.energy - first.energy)) << '\n'
              << "wrote " << (g.out_dir / "series.csv").string() << '\n';
  }
  return 0;
}

ConvergenceReport convergence_study(const ConvergenceOptions& opt,
                                    int threads) {
  if (opt.dts.empty())
    throw std::invalid_argument("convergence study needs step sizes");
  const fnls::ModelParams model(1.0, opt.sigma);
  const fnls::WaveParams wave =
      fnls::WaveParams::traveling(model, opt.lambda1, opt.lambda2);
  fnls::GridPtr grid = fnls::make_grid(opt.half_length, opt.modes);
  const fnls::Profile prof = fnls::exact_soliton(wave, grid);
  const fnls::ComplexField reference =
      fnls::traveling_solution(prof, opt.duration);

  ConvergenceReport report;
  report.dt_values = opt.dts;
  report.v_errors.resize(opt.dts.size());
  report.w_errors.resize(opt.dts.size());

  std::vector<std::exception_ptr> failures(opt.dts.size());
  auto run_one = [&](std::size_t i) {
    try {
      fnls::StepperConfig cfg;
      cfg.dt = opt.dts[i];
      cfg.stage_tol = opt.stage_tol;
      cfg.stage_max_iter = opt.stage_max_iter;
      const fnls::ComplexField end_state =
          fnls::integrate(prof.u0, opt.duration, cfg, model);
      const auto [ev, ew] = fnls::component_l2_distance(end_state, reference);
      report.v_errors[i] = ev;
      report.w_errors[i] = ew;
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      std::max(threads, 1), opt.dts.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < opt.dts.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < opt.dts.size();
             i = next.fetch_add(1))
          run_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i + 1 < opt.dts.size(); ++i) {
    const double span = std::log(opt.dts[i] / opt.dts[i + 1]);
    report.v_rates.push_back(
        std::log(report.v_errors[i] / report.v_errors[i + 1]) / span);
    report.w_rates.push_back(
        std::log(report.w_errors[i] / report.w_errors[i + 1]) / span);
  }
  return report;
}

int cmd_convergence(const ConvergenceOptions& opt, const GlobalOptions& g) {
  const ConvergenceReport report = convergence_study(opt, g.threads);

  fs::create_directories(g.out_dir);
  std::ofstream out(g.out_dir / "convergence.csv", std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " +
                             (g.out_dir / "convergence.csv").string());
  out << "dt,v_error,v_rate,w_error,w_rate\n";
  for (std::size_t i = 0; i < report.dt_values.size(); ++i) {
    out << format_shortest(report.dt_values[i]) << ','
        << format_shortest(report.v_errors[i]) << ',';
    if (i > 0) out << format_shortest(report.v_rates[i - 1]);
    out << ',' << format_shortest(report.w_errors[i]) << ',';
    if (i > 0) out << format_shortest(report.w_rates[i - 1]);
    out << '\n';
  }
  out.close();

  if (!g.quiet) {
    std::cout << "dt        v_error      rate    w_error      rate\n";
    for (std::size_t i = 0; i < report.dt_values.size(); ++i) {
      std::cout << format_shortest(report.dt_values[i]) << "  "
                << format_shortest(report.v_errors[i]) << "  ";
      std::cout << (i > 0 ? format_shortest(report.v_rates[i - 1]) : "-");
      std::cout << "  " << format_shortest(report.w_errors[i]) << "  ";
      std::cout << (i > 0 ? format_shortest(report.w_rates[i - 1]) : "-");
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_dispersion(const DispersionOptions& opt, const GlobalOptions& g) {
  const fnls::DispersionParams params(opt.cs, opt.s);
  const std::vector<double> ks =
      fnls::uniform_grid(opt.k_lo, opt.k_hi, opt.count);
  const std::vector<fnls::TailRow> rows = fnls::tail_report(params, ks);
  const double kp = fnls::phase_threshold(params);
  const double kg = fnls::group_threshold(params);

  fs::create_directories(g.out_dir);
  {
    std::ofstream out(g.out_dir / "dispersion.csv", std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write " +
                               (g.out_dir / "dispersion.csv").string());
    out << "# phase_threshold = " << format_full(kp) << '\n';
    out << "# group_threshold = " << format_full(kg) << '\n';
    out << "k,omega_plus,omega_minus,phase_plus,phase_minus,group_plus,"
           "group_minus,plus_leads,minus_trails\n";
    for (const fnls::TailRow& r : rows) {
      out << format_shortest(r.k) << ',' << format_shortest(r.omega_plus)
          << ',' << format_shortest(r.omega_minus) << ','
          << format_shortest(r.phase_plus) << ','
          << format_shortest(r.phase_minus) << ','
          << format_shortest(r.group_plus) << ','
          << format_shortest(r.group_minus) << ',' << (r.plus_leads ? 1 : 0)
          << ',' << (r.minus_trails ? 1 : 0) << '\n';
    }
  }

  if (opt.essential) {
    std::ofstream out(g.out_dir / "essential.csv", std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write " +
                               (g.out_dir / "essential.csv").string());
    out << "xi,lambda_plus,lambda_minus\n";
    const std::size_t count = 2 * opt.count + 1;
    const double step = 2.0 * opt.k_hi / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      const double xi = -opt.k_hi + step * static_cast<double>(i);
      out << format_shortest(xi) << ','
          << format_shortest(fnls::essential_spectrum(
                 xi, fnls::Branch::plus, opt.lambda1, opt.cs, opt.s))
          << ','
          << format_shortest(fnls::essential_spectrum(
                 xi, fnls::Branch::minus, opt.lambda1, opt.cs, opt.s))
          << '\n';
    }
  }

  if (!g.quiet) {
    std::cout << "phase threshold k* = " << format_shortest(kp)
              << " (tails with k > k* outrun the wave)\n"
              << "group threshold    = " << format_shortest(kg) << '\n'
              << "wrote " << (g.out_dir / "dispersion.csv").string() << '\n';
  }
  return 0;
}

}  // namespace fnlscli
