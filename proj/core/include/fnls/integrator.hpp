#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"
#include "fnls/operators.hpp"

namespace fnls {

// Fractional substep weights of the fourth-order triple-jump composition of
// the implicit midpoint rule: b1 = b3 = 1 / (2 - 2^{1/3}), b2 = 1 - 2 b1.
struct CompositionCoefficients {
  static CompositionCoefficients triple_jump();

  double sum() const noexcept { return b[0] + b[1] + b[2]; }

  std::array<double, 3> b;
};

struct StepperConfig {
  double dt = 0.01;
  double stage_tol = 1e-13;     // relative L^2 increment between sweeps
  int stage_max_iter = 100;
  bool linear_only = false;     // drop the nonlinear term (free evolution)
};

// Advances the semidiscrete system. The implicit midpoint stage
// U = u + (h/2) F(U) is solved by the semi-implicit fixed point that treats
// the diagonal linear part exactly:
//   U <- (u + i (h/2) NL(U)) / (1 + i (h/2) |k tilde|^{2s}),
// warm-started from the previous substep's stage. Holds per-instance work
// buffers; use one instance per thread of execution.
class Stepper {
public:
  Stepper(GridPtr grid, const ModelParams& p, const StepperConfig& cfg,
          const CompositionCoefficients& cc = CompositionCoefficients::triple_jump());

  // One midpoint substep of size h (h may be negative): returns 2U - u.
  // Throws NonConvergence if the stage iteration exhausts stage_max_iter.
  Spectrum midpoint_substep(const Spectrum& u, double h);

  // Three chained substeps b1 dt, b2 dt, b3 dt.
  Spectrum composition_step(const Spectrum& u) {
    return composition_step(u, cfg_.dt);
  }
  Spectrum composition_step(const Spectrum& u, double dt);

  // Drops the warm-start stage so the next substep seeds from its input.
  void reset_stage_guess() { stage_guess_.reset(); }

  const StepperConfig& config() const noexcept { return cfg_; }
  const CompositionCoefficients& coefficients() const noexcept { return cc_; }
  const ModelParams& model() const noexcept { return params_; }

private:
  GridPtr grid_;
  ModelParams params_;
  StepperConfig cfg_;
  CompositionCoefficients cc_;
  NonlinearEvaluator nl_;
  std::vector<double> symbol_;          // |k tilde|^{2s}, DC-centered
  std::vector<Complex> stage_;
  std::vector<Complex> next_;
  std::vector<Complex> nlbuf_;
  std::optional<std::vector<Complex>> stage_guess_;
};

// Callbacks fired while integrate() walks the time axis. Cadence and
// explicit-time observers receive nodal values (synthesized lazily, at most
// once per step); per-step observers receive the raw spectrum.
class ObserverSet {
public:
  using FieldObserver = std::function<void(double t, const ComplexField& u)>;
  using StepObserver =
      std::function<void(std::size_t step, double t, const Spectrum& u)>;

  // Fires at t = 0, every `cadence` time units after, and at the final time.
  void add_cadence(double cadence, FieldObserver fn);
  // Fires at the first notification with t >= each requested time.
  void add_at(std::vector<double> times, FieldObserver fn);
  void add_every_step(StepObserver fn);

  bool empty() const noexcept {
    return cadence_.empty() && timed_.empty() && stepwise_.empty();
  }

  // Called by integrate(); `final` marks the last step.
  void notify(std::size_t step, double t, const Spectrum& u, bool final);

private:
  struct CadenceEntry {
    double cadence;
    FieldObserver fn;
    std::size_t next_index = 0;
    double last_fired = -1.0;
    bool fired_any = false;
  };
  struct TimedEntry {
    std::vector<double> times;
    FieldObserver fn;
    std::size_t cursor = 0;
  };

  std::vector<CadenceEntry> cadence_;
  std::vector<TimedEntry> timed_;
  std::vector<StepObserver> stepwise_;
};

// Integrates the initial field to time T >= 0 with fixed step cfg.dt (the
// final step is shortened when T is not a multiple). Observers fire at t = 0
// and after every step. T = 0 returns u0 unchanged.
ComplexField integrate(const ComplexField& u0, double T,
                       const StepperConfig& cfg, const ModelParams& p,
                       ObserverSet& observers,
                       const CompositionCoefficients& cc =
                           CompositionCoefficients::triple_jump());

ComplexField integrate(const ComplexField& u0, double T,
                       const StepperConfig& cfg, const ModelParams& p);

}  // namespace fnls
