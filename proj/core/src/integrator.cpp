#include "fnls/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnls/errors.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

CompositionCoefficients CompositionCoefficients::triple_jump() {
  const double b1 = 1.0 / (2.0 - std::cbrt(2.0));
  return CompositionCoefficients{{b1, 1.0 - 2.0 * b1, b1}};
}

Stepper::Stepper(GridPtr grid, const ModelParams& p, const StepperConfig& cfg,
                 const CompositionCoefficients& cc)
    : grid_(std::move(grid)),
      params_(p),
      cfg_(cfg),
      cc_(cc),
      nl_(grid_, p.sigma),
      stage_(grid_->coeff_count()),
      next_(grid_->coeff_count()),
      nlbuf_(grid_->coeff_count()) {
  if (!(cfg_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg_.stage_tol > 0.0))
    throw std::invalid_argument("stage tolerance must be positive");
  if (cfg_.stage_max_iter < 1)
    throw std::invalid_argument("stage iteration cap must be >= 1");
  symbol_.resize(grid_->coeff_count());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid_->modes());
  const double e = 2.0 * params_.s;
  for (std::ptrdiff_t k = -n; k <= n; ++k)
    symbol_[static_cast<std::size_t>(k + n)] =
        std::pow(std::abs(grid_->wavenumber(k)), e);
}

Spectrum Stepper::midpoint_substep(const Spectrum& u, double h) {
  if (!u.grid().same_layout(*grid_))
    throw std::invalid_argument("spectrum grid does not match stepper");
  const std::size_t w = grid_->coeff_count();
  const auto uc = u.coefficients();
  const double hh = 0.5 * h;
  constexpr double tiny = std::numeric_limits<double>::min();

  if (cfg_.linear_only) {
    // Stage solve is exactly linear: U = u / (1 + i (h/2) |k tilde|^{2s}).
    std::vector<Complex> out(w);
    for (std::size_t j = 0; j < w; ++j) {
      const Complex stage = uc[j] / Complex(1.0, hh * symbol_[j]);
      out[j] = 2.0 * stage - uc[j];
    }
    return Spectrum(u.grid_ptr(), std::move(out));
  }

  if (stage_guess_ && stage_guess_->size() == w) {
    std::copy(stage_guess_->begin(), stage_guess_->end(), stage_.begin());
  } else {
    std::copy(uc.begin(), uc.end(), stage_.begin());
  }

  // The fixed-point update cannot shrink below the rounding noise of the
  // dealiased nonlinear evaluation, and that floor sits above a very tight
  // tolerance for large fields. An update that is already tiny and has
  // stopped making headway against the best one seen counts as converged.
  constexpr double kStallCeiling = 1e-9;
  constexpr double kStallProgress = 0.9;  // < 10% gain on the best = stalled

  bool converged = false;
  double rel = std::numeric_limits<double>::infinity();
  double best_rel = std::numeric_limits<double>::infinity();
  int stalled = 0;
  int iter = 0;
  for (iter = 1; iter <= cfg_.stage_max_iter; ++iter) {
    nl_.apply(stage_, nlbuf_);
    double delta2 = 0.0;
    double scale2 = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
      const Complex rhs = uc[j] + Complex(0.0, hh) * nlbuf_[j];
      const Complex fresh = rhs / Complex(1.0, hh * symbol_[j]);
      delta2 += std::norm(fresh - stage_[j]);
      scale2 += std::norm(fresh);
      next_[j] = fresh;
    }
    stage_.swap(next_);
    rel = std::sqrt(delta2) / std::max(std::sqrt(scale2), tiny);
    if (rel <= cfg_.stage_tol) {
      converged = true;
      break;
    }
    if (!std::isfinite(rel)) break;  // diverged; further iterates stay NaN
    stalled = (rel < kStallCeiling && rel > kStallProgress * best_rel)
                  ? stalled + 1
                  : 0;
    if (stalled >= 2) {
      converged = true;
      break;
    }
    best_rel = std::min(best_rel, rel);
  }
  if (!converged)
    throw NonConvergence(std::min(iter, cfg_.stage_max_iter), rel);

  if (!stage_guess_) stage_guess_.emplace(w);
  std::copy(stage_.begin(), stage_.end(), stage_guess_->begin());

  std::vector<Complex> out(w);
  for (std::size_t j = 0; j < w; ++j) out[j] = 2.0 * stage_[j] - uc[j];
  return Spectrum(u.grid_ptr(), std::move(out));
}

Spectrum Stepper::composition_step(const Spectrum& u, double dt) {
  Spectrum x = midpoint_substep(u, cc_.b[0] * dt);
  x = midpoint_substep(x, cc_.b[1] * dt);
  return midpoint_substep(x, cc_.b[2] * dt);
}

void ObserverSet::add_cadence(double cadence, FieldObserver fn) {
  if (!(cadence > 0.0))
    throw std::invalid_argument("observer cadence must be positive");
  cadence_.push_back(CadenceEntry{cadence, std::move(fn), 0, -1.0, false});
}

void ObserverSet::add_at(std::vector<double> times, FieldObserver fn) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  timed_.push_back(TimedEntry{std::move(times), std::move(fn), 0});
}

void ObserverSet::add_every_step(StepObserver fn) {
  stepwise_.push_back(std::move(fn));
}

void ObserverSet::notify(std::size_t step, double t, const Spectrum& u,
                         bool final) {
  for (auto& fn : stepwise_) fn(step, t, u);
  if (cadence_.empty() && timed_.empty()) return;

  const double slack = 1e-9 * std::max(1.0, std::abs(t));
  std::optional<ComplexField> field;
  auto nodal = [&]() -> const ComplexField& {
    if (!field) field.emplace(from_spectrum(u));
    return *field;
  };

  for (auto& e : cadence_) {
    const bool due =
        static_cast<double>(e.next_index) * e.cadence <= t + slack;
    if (due || (final && (!e.fired_any || e.last_fired != t))) {
      e.fn(t, nodal());
      e.last_fired = t;
      e.fired_any = true;
      while (static_cast<double>(e.next_index) * e.cadence <= t + slack)
        ++e.next_index;
    }
  }
  for (auto& e : timed_) {
    while (e.cursor < e.times.size() && e.times[e.cursor] <= t + slack) {
      e.fn(t, nodal());
      ++e.cursor;
    }
  }
  (void)step;
}

ComplexField integrate(const ComplexField& u0, double T,
                       const StepperConfig& cfg, const ModelParams& p,
                       ObserverSet& observers,
                       const CompositionCoefficients& cc) {
  if (T < 0.0) throw std::invalid_argument("integration time must be >= 0");
  Spectrum u = to_spectrum(u0);
  observers.notify(0, 0.0, u, T == 0.0);
  if (T == 0.0) return u0;

  Stepper stepper(u0.grid_ptr(), p, cfg, cc);
  const double dt = cfg.dt;
  std::size_t nsteps =
      static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  if (nsteps == 0) nsteps = 1;

  double t_prev = 0.0;
  for (std::size_t step = 1; step <= nsteps; ++step) {
    const double t = (step == nsteps) ? T : static_cast<double>(step) * dt;
    try {
      u = stepper.composition_step(u, t - t_prev);
    } catch (const NonConvergence& e) {
      throw e.with_context(step, t_prev);
    }
    observers.notify(step, t, u, step == nsteps);
    t_prev = t;
  }
  return from_spectrum(u);
}

ComplexField integrate(const ComplexField& u0, double T,
                       const StepperConfig& cfg, const ModelParams& p) {
  ObserverSet none;
  return integrate(u0, T, cfg, p, none);
}

}  // namespace fnls
