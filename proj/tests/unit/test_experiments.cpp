#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "fnls/errors.hpp"
#include "fnls/experiments.hpp"
#include "fnls/observables.hpp"
#include "fnls/transforms.hpp"
#include "helpers.hpp"

using namespace fnls;
using testutil::classical_soliton;
using testutil::unit_profile;

TEST_CASE("amplitude scaling acts on each component independently") {
  const Profile& prof = unit_profile();
  ComplexField scaled = amplitude_scale(prof, 1.1, 0.9);
  for (std::size_t j = 0; j < scaled.size(); ++j) {
    CHECK(scaled[j].real() == doctest::Approx(1.1 * prof.u0[j].real()));
    CHECK(scaled[j].imag() == doctest::Approx(0.9 * prof.u0[j].imag()));
  }
}

TEST_CASE("precision noise is the scaled double-single rounding gap") {
  const Profile& prof = unit_profile();
  std::vector<double> v(prof.u0.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = prof.u0[j].real();
  v.push_back(0.0);  // exact-in-single values must produce exactly zero

  const double m = 1e5;
  const auto noise = precision_noise(v, m);
  REQUIRE(noise.size() == v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    // |f - binary32(f)| <= 2^{-24} |f| for values in the normal range.
    CHECK(std::abs(noise[j]) <= m * std::abs(v[j]) * std::pow(2.0, -24));
    if (v[j] == 0.0) CHECK(noise[j] == 0.0);
  }

  double peak = 0.0;
  for (double x : noise) peak = std::max(peak, std::abs(x));
  CHECK(peak > 1e-4);
  CHECK(peak < 1e-2);

  // Byte-for-byte reproducible, and exactly zero at m = 0.
  const auto again = precision_noise(v, m);
  CHECK(std::memcmp(noise.data(), again.data(),
                    noise.size() * sizeof(double)) == 0);
  for (double x : precision_noise(v, 0.0)) CHECK(x == 0.0);
}

TEST_CASE("noisy component perturbs only the chosen component") {
  const Profile& prof = unit_profile();
  ComplexField noisy = noisy_component(prof, Component::real_part, 1e5);
  std::vector<double> v(prof.u0.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = prof.u0[j].real();
  const auto expected = precision_noise(v, 1e5);
  for (std::size_t j = 0; j < noisy.size(); ++j) {
    CHECK(noisy[j].imag() == prof.u0[j].imag());  // untouched component
    CHECK(noisy[j].real() ==
          doctest::Approx(prof.u0[j].real() + expected[j]).epsilon(1e-15));
  }
}

TEST_CASE("nonsymmetric scaling applies the documented envelope") {
  const Profile& prof = unit_profile();
  const double alpha = 3.0;
  ComplexField mod = nonsymmetric_scale(prof, Component::imag_part, alpha);
  const auto& grid = prof.u0.grid();
  for (std::size_t j = 0; j < mod.size(); j += 7) {
    const double x = grid.node(j);
    const double factor =
        1.0 + alpha * std::tanh(0.5 * (x - prof.params.x0));
    CHECK(mod[j].real() == prof.u0[j].real());
    CHECK(mod[j].imag() ==
          doctest::Approx(factor * prof.u0[j].imag()).epsilon(1e-13));
  }
}

TEST_CASE("gaussian data evaluates the ansatz pointwise") {
  auto grid = make_grid(32.0, 64);
  const Phase phase = Phase::linear(0.3);
  ComplexField g = gaussian_data(grid, 1.5, 0.2, phase, 2.0, 0.7);
  for (std::size_t j = 0; j < g.size(); j += 5) {
    const double y = grid->node(j) - 2.0;
    const Complex want =
        1.5 * std::exp(-0.2 * y * y) * std::polar(1.0, 0.3 * y + 0.7);
    CHECK(std::abs(g[j] - want) < 1e-14);
  }
  CHECK_THROWS_AS(gaussian_data(grid, 1.0, 0.0, phase, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(gaussian_data(grid, 1.0, -0.2, phase, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("core width measures the full width at half maximum") {
  // sech profile: rho = sqrt(2a) sech(sqrt(a) y) crosses half its crest at
  // y = acosh(2)/sqrt(a); frozen width 2 acosh(2)/sqrt(63/64).
  const double width = core_width(classical_soliton());
  CHECK(width == doctest::Approx(2.6547375865948188674).epsilon(2e-3));
}

TEST_CASE("superposition translates, sums, and reports separations") {
  ModelParams m(0.8, 1.0);
  std::vector<SuperposedWave> waves;
  waves.push_back({WaveParams::traveling(m, 1.0, 1.0), -600.0});
  waves.push_back({WaveParams::traveling(m, 1.0, 0.25), -500.0});
  auto grid = make_grid(1024.0, 4096);
  Superposition sup = superpose(waves, grid);

  REQUIRE(sup.parts.size() == 2);
  // Parts remain centered; the sum carries them at their centers.
  CHECK(std::abs(peak_locate(sup.parts[0].u0).position) < 0.5);
  CHECK(std::abs(peak_locate(sup.parts[1].u0).position) < 0.5);
  const Peak main = peak_locate(sup.field);
  CHECK(main.position == doctest::Approx(-500.0).epsilon(1e-4));
  CHECK(main.amplitude == doctest::Approx(1.4941).epsilon(0.01));

  // Separation 100 against a core width of about 2.3.
  CHECK(sup.min_gap_in_core_widths > 42.0);
  CHECK(sup.min_gap_in_core_widths < 44.0);

  // Far-separated waves superpose almost orthogonally: the mass of the sum
  // is the sum of the masses up to tail overlap.
  double mass_parts = 0.0;
  for (const auto& part : sup.parts)
    mass_parts += invariants(to_spectrum(part.u0), m).mass;
  const double mass_sum = invariants(to_spectrum(sup.field), m).mass;
  CHECK(std::abs(mass_sum - mass_parts) / mass_parts < 1e-4);
}

TEST_CASE("crowded superpositions are reported, not rejected") {
  ModelParams m(0.8, 1.0);
  std::vector<SuperposedWave> waves;
  waves.push_back({WaveParams::traveling(m, 1.0, 0.25), -10.0});
  waves.push_back({WaveParams::traveling(m, 1.0, -0.25), 10.0});
  auto grid = make_grid(256.0, 1024);
  Superposition sup = superpose(waves, grid);
  CHECK(sup.min_gap_in_core_widths < 10.0);
  CHECK(sup.min_gap_in_core_widths > 5.0);
}

TEST_CASE("experiment catalog lists every preset and rejects strangers") {
  const auto names = preset_names();
  CHECK(names.size() == 12);
  for (const auto& name : names) CHECK_NOTHROW(preset(name));
  CHECK_THROWS_AS(preset("does-not-exist"), std::invalid_argument);
}

namespace {

// Downsized run box so catalog entries can be built quickly in tests.
void shrink(ExperimentSpec& spec, std::size_t modes, double half_length) {
  spec.run.modes = modes;
  spec.run.half_length = half_length;
}

}  // namespace

TEST_CASE("amplitude experiments scale the resolved base profile") {
  ExperimentSpec spec = preset("classical-amplitude");
  shrink(spec, 512, 64.0);
  BuiltExperiment built = build_experiment(spec);
  REQUIRE(built.base.has_value());
  CHECK(built.model.s == 1.0);
  // The base is the closed-form shape; the initial data is its scaled copy.
  for (std::size_t j = 0; j < built.initial.size(); j += 9) {
    CHECK(built.initial[j].real() ==
          doctest::Approx(1.1 * built.base->u0[j].real()));
    CHECK(built.initial[j].imag() == built.base->u0[j].imag());
  }
}

TEST_CASE("noise experiments stay inside the rounding-gap envelope") {
  ExperimentSpec spec = preset("noise-small");
  shrink(spec, 512, 256.0);
  BuiltExperiment built = build_experiment(spec);
  REQUIRE(built.base.has_value());
  const double bound = 1e5 * std::pow(2.0, -24);
  for (std::size_t j = 0; j < built.initial.size(); ++j) {
    const double delta = built.initial[j].real() - built.base->u0[j].real();
    CHECK(std::abs(delta) <= bound * std::abs(built.base->u0[j].real()));
    CHECK(built.initial[j].imag() == built.base->u0[j].imag());
  }
}

TEST_CASE("gaussian experiments carry no base profile") {
  ExperimentSpec spec = preset("gaussian-resolution");
  shrink(spec, 512, 256.0);
  BuiltExperiment built = build_experiment(spec);
  CHECK_FALSE(built.base.has_value());
  const Peak pk = peak_locate(built.initial);
  CHECK(pk.amplitude == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(pk.position) < 0.5);
}

TEST_CASE("dispersion-order perturbation shifts the flow, not the data") {
  ExperimentSpec spec = preset("s-perturb");
  shrink(spec, 512, 256.0);
  BuiltExperiment built = build_experiment(spec);
  REQUIRE(built.base.has_value());
  CHECK(built.model.s == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(built.base->params.model.s == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::memcmp(built.initial.samples().data(),
                    built.base->u0.samples().data(),
                    built.initial.size() * sizeof(Complex)) == 0);

  // The shifted order must stay inside the solitary-wave range.
  ExperimentSpec bad = preset("s-perturb");
  bad.kind = SPerturbSpec{0.25};
  shrink(bad, 512, 256.0);
  CHECK_THROWS_AS(build_experiment(bad), std::invalid_argument);
}

TEST_CASE("blow-up probe starts from negative energy") {
  ExperimentSpec spec = preset("blowup-probe");
  shrink(spec, 1024, 256.0);
  BuiltExperiment built = build_experiment(spec);
  CHECK(built.model.sigma == 2.0);
  CHECK(energy_sign(built.initial, built.model) == -1);
}

TEST_CASE("collision presets superpose at the catalog geometry") {
  ExperimentSpec spec = preset("overtaking");
  shrink(spec, 4096, 1024.0);
  BuiltExperiment built = build_experiment(spec);
  CHECK_FALSE(built.base.has_value());
  // Taller, slower wave at -500; faster companion at -600.
  const Peak main = peak_locate(built.initial);
  CHECK(main.position == doctest::Approx(-500.0).epsilon(1e-4));
  CHECK(main.amplitude == doctest::Approx(1.4941).epsilon(0.01));
}

TEST_CASE("experiment construction is bitwise reproducible") {
  ExperimentSpec spec = preset("noise-small");
  shrink(spec, 512, 256.0);
  BuiltExperiment a = build_experiment(spec);
  BuiltExperiment b = build_experiment(spec);
  CHECK(std::memcmp(a.initial.samples().data(), b.initial.samples().data(),
                    a.initial.size() * sizeof(Complex)) == 0);
}
