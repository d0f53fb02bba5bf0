#include "fnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fnls/transforms.hpp"

namespace fnls {

namespace {

std::vector<double> component_samples(const Profile& prof, Component which) {
  std::vector<double> out(prof.u0.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (which == Component::real_part) ? prof.u0[j].real()
                                             : prof.u0[j].imag();
  return out;
}

Profile resolve_profile(const WaveParams& wave, GridPtr grid, double tol) {
  if (wave.model.s == 1.0) return exact_soliton(wave, std::move(grid));
  return solve_profile(wave, std::move(grid), tol);
}

ComplexField translate(const ComplexField& f, double shift) {
  Spectrum c = to_spectrum(f);
  const SpectralGrid& g = c.grid();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  for (std::ptrdiff_t k = -n; k <= n; ++k)
    c.coeff(k) *= std::polar(1.0, -g.wavenumber(k) * shift);
  return from_spectrum(c);
}

}  // namespace

ComplexField amplitude_scale(const Profile& prof, double a1, double a2) {
  std::vector<Complex> out(prof.u0.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = Complex(a1 * prof.u0[j].real(), a2 * prof.u0[j].imag());
  return ComplexField(prof.u0.grid_ptr(), std::move(out));
}

std::vector<double> precision_noise(std::span<const double> samples,
                                    double m) {
  std::vector<double> out(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double narrowed = static_cast<double>(static_cast<float>(samples[j]));
    out[j] = m * (samples[j] - narrowed);
  }
  return out;
}

ComplexField noisy_component(const Profile& prof, Component target, double m) {
  if (!(m >= 0.0))
    throw std::invalid_argument("noise magnitude must be >= 0");
  const std::vector<double> f = component_samples(prof, target);
  const std::vector<double> p = precision_noise(f, m);
  std::vector<Complex> out(prof.u0.samples().begin(),
                           prof.u0.samples().end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (target == Component::real_part)
      out[j] += Complex(p[j], 0.0);
    else
      out[j] += Complex(0.0, p[j]);
  }
  return ComplexField(prof.u0.grid_ptr(), std::move(out));
}

ComplexField nonsymmetric_scale(const Profile& prof, Component target,
                                double alpha) {
  const SpectralGrid& g = prof.u0.grid();
  const double x0 = prof.params.x0;
  std::vector<Complex> out(prof.u0.samples().begin(),
                           prof.u0.samples().end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double p = 1.0 + alpha * std::tanh(0.5 * (g.node(j) - x0));
    if (target == Component::real_part)
      out[j] = Complex(p * out[j].real(), out[j].imag());
    else
      out[j] = Complex(out[j].real(), p * out[j].imag());
  }
  return ComplexField(prof.u0.grid_ptr(), std::move(out));
}

ComplexField gaussian_data(GridPtr grid, double a1, double a2,
                           const Phase& phase, double x0, double theta0) {
  if (!(a2 > 0.0))
    throw std::invalid_argument("gaussian width parameter must be positive");
  std::vector<Complex> out(grid->points());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double y = grid->node(j) - x0;
    out[j] = a1 * std::exp(-a2 * y * y) * std::polar(1.0, phase(y) + theta0);
  }
  return ComplexField(std::move(grid), std::move(out));
}

double core_width(const Profile& prof) {
  const std::size_t m = prof.u0.size();
  std::vector<double> rho(m);
  for (std::size_t j = 0; j < m; ++j) rho[j] = std::abs(prof.u0[j]);
  const std::size_t peak = static_cast<std::size_t>(
      std::distance(rho.begin(), std::max_element(rho.begin(), rho.end())));
  const double half = 0.5 * rho[peak];
  if (!(half > 0.0))
    throw std::invalid_argument("zero field has no core width");

  const double h = prof.u0.grid().spacing();
  auto crossing = [&](std::ptrdiff_t dir) {
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
    std::size_t cur = peak;
    for (std::size_t walked = 0; walked < m; ++walked) {
      const std::size_t next = static_cast<std::size_t>(
          (static_cast<std::ptrdiff_t>(cur) + dir + mm) % mm);
      if (rho[next] < half) {
        // Linear interpolation between cur and next.
        const double frac = (rho[cur] - half) / (rho[cur] - rho[next]);
        return static_cast<double>(walked) + frac;
      }
      cur = next;
    }
    throw std::invalid_argument("field never falls below half maximum");
  };
  return h * (crossing(+1) + crossing(-1));
}

Superposition superpose(std::span<const SuperposedWave> waves, GridPtr grid,
                        double profile_tol) {
  if (waves.empty())
    throw std::invalid_argument("superposition needs at least one wave");

  std::vector<Profile> parts;
  parts.reserve(waves.size());
  std::vector<Complex> sum(grid->points(), Complex(0.0, 0.0));
  std::vector<double> widths;
  for (const SuperposedWave& w : waves) {
    Profile prof = resolve_profile(w.params, grid, profile_tol);
    widths.push_back(core_width(prof));
    const ComplexField shifted = translate(prof.u0, w.center);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += shifted[j];
    parts.push_back(std::move(prof));
  }

  double min_gap = std::numeric_limits<double>::infinity();
  const double span = 2.0 * grid->half_length();
  for (std::size_t i = 0; i < waves.size(); ++i) {
    for (std::size_t j = i + 1; j < waves.size(); ++j) {
      double d = std::fmod(std::abs(waves[i].center - waves[j].center), span);
      d = std::min(d, span - d);
      const double scale = std::max(widths[i], widths[j]);
      min_gap = std::min(min_gap, d / scale);
    }
  }

  return Superposition{ComplexField(std::move(grid), std::move(sum)),
                       std::move(parts), min_gap};
}

BuiltExperiment build_experiment(const ExperimentSpec& spec) {
  GridPtr grid = make_grid(spec.run.half_length, spec.run.modes);
  std::vector<std::string> notes;

  if (const auto* g = std::get_if<GaussianSpec>(&spec.kind)) {
    ComplexField init = gaussian_data(grid, g->a1, g->a2, spec.wave.phase,
                                      spec.wave.x0, spec.wave.theta0);
    return BuiltExperiment{std::move(init), spec.wave.model, std::nullopt,
                           std::move(notes)};
  }

  if (const auto* sp = std::get_if<SuperpositionSpec>(&spec.kind)) {
    for (const SuperposedWave& w : sp->waves) {
      if (w.params.model.s != spec.wave.model.s ||
          w.params.model.sigma != spec.wave.model.sigma)
        throw std::invalid_argument(
            "superposed waves must share the model parameters");
    }
    Superposition sup = superpose(sp->waves, grid, spec.profile_tol);
    if (sup.min_gap_in_core_widths < 10.0)
      notes.push_back("superposition centers are only " +
                      std::to_string(sup.min_gap_in_core_widths) +
                      " core widths apart; initial overlap is not negligible");
    return BuiltExperiment{std::move(sup.field), spec.wave.model, std::nullopt,
                           std::move(notes)};
  }

  Profile base = resolve_profile(spec.wave, grid, spec.profile_tol);

  if (const auto* a = std::get_if<AmplitudeScaleSpec>(&spec.kind)) {
    ComplexField init = amplitude_scale(base, a->a1, a->a2);
    return BuiltExperiment{std::move(init), spec.wave.model, std::move(base),
                           std::move(notes)};
  }
  if (const auto* nz = std::get_if<NoiseSpec>(&spec.kind)) {
    ComplexField init = noisy_component(base, nz->target, nz->magnitude);
    return BuiltExperiment{std::move(init), spec.wave.model, std::move(base),
                           std::move(notes)};
  }
  if (const auto* ns = std::get_if<NonsymmetricSpec>(&spec.kind)) {
    ComplexField init = nonsymmetric_scale(base, ns->target, ns->alpha);
    return BuiltExperiment{std::move(init), spec.wave.model, std::move(base),
                           std::move(notes)};
  }
  const auto& sp = std::get<SPerturbSpec>(spec.kind);
  const double sbar = spec.wave.model.s;
  const double s = sbar + sp.eps;
  if (!(sp.eps > 0.0))
    throw std::invalid_argument("s perturbation must be positive");
  if (!(sbar > 0.5) || !(sbar < 1.0) || !(s < 1.0))
    throw std::invalid_argument(
        "s perturbation requires sbar and sbar + eps inside (1/2, 1)");
  ModelParams flow(s, spec.wave.model.sigma);
  ComplexField init = base.u0;
  return BuiltExperiment{std::move(init), flow, std::move(base),
                         std::move(notes)};
}

namespace {

RunControls standard_run() { return RunControls{}; }

ModelParams standard_model() { return ModelParams(0.8, 1.0); }

WaveParams standard_wave(double lambda2 = 0.25) {
  return WaveParams::traveling(standard_model(), 1.0, lambda2);
}

}  // namespace

ExperimentSpec preset(const std::string& name) {
  if (name == "classical-amplitude") {
    WaveParams wave =
        WaveParams::traveling(ModelParams(1.0, 1.0), 1.0, 0.25);
    return ExperimentSpec(AmplitudeScaleSpec{1.1, 1.0}, wave, standard_run());
  }
  if (name == "amplitude-small") {
    WaveParams wave = WaveParams::chirped(standard_model(), 1.0, 0.25);
    return ExperimentSpec(AmplitudeScaleSpec{1.1, 1.0}, wave, standard_run());
  }
  if (name == "amplitude-breather") {
    WaveParams wave = WaveParams::chirped(standard_model(), 1.0, 0.25);
    return ExperimentSpec(AmplitudeScaleSpec{1.2, 1.2}, wave, standard_run());
  }
  if (name == "amplitude-resolution") {
    return ExperimentSpec(AmplitudeScaleSpec{1.8, 2.0}, standard_wave(),
                          standard_run());
  }
  if (name == "gaussian-resolution") {
    return ExperimentSpec(GaussianSpec{1.0, 0.01}, standard_wave(),
                          standard_run());
  }
  if (name == "noise-small") {
    return ExperimentSpec(NoiseSpec{Component::real_part, 1e5},
                          standard_wave(), standard_run());
  }
  if (name == "noise-large") {
    return ExperimentSpec(NoiseSpec{Component::real_part, 1e7},
                          standard_wave(), standard_run());
  }
  if (name == "nonsymmetric") {
    return ExperimentSpec(NonsymmetricSpec{Component::real_part, 3.0},
                          standard_wave(), standard_run());
  }
  if (name == "overtaking") {
    SuperpositionSpec sup;
    sup.waves.push_back(SuperposedWave{standard_wave(1.0), -600.0});
    sup.waves.push_back(SuperposedWave{standard_wave(0.25), -500.0});
    return ExperimentSpec(std::move(sup), standard_wave(), standard_run());
  }
  if (name == "head-on") {
    SuperpositionSpec sup;
    sup.waves.push_back(SuperposedWave{standard_wave(1.0), -600.0});
    sup.waves.push_back(SuperposedWave{standard_wave(-0.25), -500.0});
    return ExperimentSpec(std::move(sup), standard_wave(), standard_run());
  }
  if (name == "s-perturb") {
    return ExperimentSpec(SPerturbSpec{0.01}, standard_wave(), standard_run());
  }
  if (name == "blowup-probe") {
    WaveParams wave =
        WaveParams::traveling(ModelParams(0.8, 2.0), 1.0, 0.25);
    return ExperimentSpec(AmplitudeScaleSpec{1.5, 1.5}, wave, standard_run());
  }
  throw std::invalid_argument("unknown experiment preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"classical-amplitude", "amplitude-small",  "amplitude-breather",
          "amplitude-resolution", "gaussian-resolution", "noise-small",
          "noise-large",          "nonsymmetric",     "overtaking",
          "head-on",              "s-perturb",        "blowup-probe"};
}

}  // namespace fnls
