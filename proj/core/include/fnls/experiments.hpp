#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"
#include "fnls/waves.hpp"

namespace fnls {

enum class Component { real_part, imag_part };

// (A1 v0, A2 w0): independent scaling of the two components.
ComplexField amplitude_scale(const Profile& prof, double a1, double a2);

// m (f - binary32(f)): the double-single rounding gap blown up by m.
// |p| <= m 2^{-24} |f| pointwise.
std::vector<double> precision_noise(std::span<const double> samples, double m);

// Adds precision noise built from the chosen component to that component.
ComplexField noisy_component(const Profile& prof, Component target, double m);

// Multiplies the chosen component by p(x) = 1 + alpha tanh((x - x0) / 2).
ComplexField nonsymmetric_scale(const Profile& prof, Component target,
                                double alpha);

// rho(x) = A1 e^{-A2 (x - x0)^2} modulated by e^{i (theta(x - x0) + theta0)}.
ComplexField gaussian_data(GridPtr grid, double a1, double a2,
                           const Phase& phase, double x0, double theta0);

// Full width of |u0| at half its maximum.
double core_width(const Profile& prof);

struct SuperposedWave {
  WaveParams params;
  double center;
};

struct Superposition {
  ComplexField field;
  std::vector<Profile> parts;      // each still centered at its params.x0
  double min_gap_in_core_widths;   // smallest pairwise periodic separation
};

// Solves each profile and adds them up, translated to their centers.
// Separations under 10 core widths leave a visible overlap; the caller is
// warned through min_gap_in_core_widths rather than an error.
Superposition superpose(std::span<const SuperposedWave> waves, GridPtr grid,
                        double profile_tol = 1e-10);

// Discretization and march controls shared by the experiment catalog.
struct RunControls {
  std::size_t modes = 16384;
  double half_length = 1024.0;
  double dt = 0.01;
  double duration = 400.0;
  double cadence = 0.5;
};

struct AmplitudeScaleSpec {
  double a1 = 1.1;
  double a2 = 1.0;
};
struct NoiseSpec {
  Component target = Component::real_part;
  double magnitude = 1e5;
};
struct NonsymmetricSpec {
  Component target = Component::real_part;
  double alpha = 3.0;
};
struct GaussianSpec {
  double a1 = 1.0;
  double a2 = 0.01;
};
struct SuperpositionSpec {
  std::vector<SuperposedWave> waves;
};
// Profile generated at dispersion order sbar, flow run at sbar + eps; both
// must stay inside (1/2, 1).
struct SPerturbSpec {
  double eps = 0.01;
};

using ExperimentKind =
    std::variant<AmplitudeScaleSpec, NoiseSpec, NonsymmetricSpec, GaussianSpec,
                 SuperpositionSpec, SPerturbSpec>;

struct ExperimentSpec {
  ExperimentSpec(ExperimentKind kind, WaveParams wave, RunControls run = {},
                 double profile_tol = 1e-10)
      : kind(std::move(kind)),
        wave(wave),
        run(run),
        profile_tol(profile_tol) {}

  ExperimentKind kind;
  WaveParams wave;   // base wave; supplies x0/theta0/phase for Gaussian data
  RunControls run;
  double profile_tol;
};

struct BuiltExperiment {
  ComplexField initial;
  ModelParams model;              // the flow's parameters (SPerturb shifts s)
  std::optional<Profile> base;    // absent for Gaussian and superposition
  std::vector<std::string> notes;
};

// Resolves the base profile (closed form when s = 1, fixed-point solve
// otherwise) and applies the requested perturbation.
BuiltExperiment build_experiment(const ExperimentSpec& spec);

// Named catalog entries; see preset_names() for the list.
ExperimentSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace fnls
