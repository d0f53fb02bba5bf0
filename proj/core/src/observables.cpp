#include "fnls/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnls/errors.hpp"
#include "fnls/operators.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {

constexpr double kFlatTolerance = 1e-14;

struct RefinedPeak {
  double x;
  double amplitude;
};

// Three-point quadratic fit of rho^2 through the winning node and its cyclic
// neighbors. The node is a discrete argmax, so the curvature is <= 0; a flat
// triple degenerates to the node itself.
RefinedPeak refine_peak(const SpectralGrid& g, const std::vector<double>& rho2,
                        std::size_t i) {
  const std::size_t m = rho2.size();
  const double y1 = rho2[(i + m - 1) % m];
  const double y2 = rho2[i];
  const double y3 = rho2[(i + 1) % m];
  const double curvature = y1 - 2.0 * y2 + y3;
  double delta = 0.0;
  double value = y2;
  if (curvature < 0.0) {
    delta = (y1 - y3) / (2.0 * curvature);
    value = y2 - (y3 - y1) * (y3 - y1) / (8.0 * curvature);
  }
  double x = g.node(i) + delta * g.spacing();
  const double L = g.half_length();
  if (x < -L) x += 2.0 * L;
  if (x >= L) x -= 2.0 * L;
  return {x, std::sqrt(std::max(value, 0.0))};
}

std::vector<double> squared_modulus(const ComplexField& f) {
  std::vector<double> rho2(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) rho2[j] = std::norm(f[j]);
  return rho2;
}

}  // namespace

InvariantSet invariants(const Spectrum& c, const ModelParams& p) {
  const SpectralGrid& g = c.grid();
  const double L = g.half_length();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());

  double mass = 0.0;
  double momentum = 0.0;
  double kinetic = 0.0;
  const double e = 2.0 * p.s;
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double a = std::norm(c.coeff(k));
    const double kt = g.wavenumber(k);
    mass += a;
    momentum += kt * a;
    kinetic += std::pow(std::abs(kt), e) * a;
  }

  // Rectangle rule for integral (|u|^2)^{sigma+1}; the dealiased node count
  // exceeds the integrand's bandwidth for integer sigma, so it is exact.
  const std::size_t m = dealias_points(g.modes(), p.sigma);
  const std::vector<Complex> samples = synthesize(c, m);
  double quad = 0.0;
  for (const Complex& u : samples) {
    const double r2 = std::norm(u);
    quad += power_sigma(r2, p.sigma) * r2;
  }
  quad *= 2.0 * L / static_cast<double>(m);

  return InvariantSet{L * mass, L * momentum,
                      L * kinetic - quad / (2.0 * p.sigma + 2.0)};
}

InvariantSet invariants(const ComplexField& f, const ModelParams& p) {
  return invariants(to_spectrum(f), p);
}

int energy_sign(const Spectrum& c, const ModelParams& p) {
  const double h = invariants(c, p).energy;
  return (h > 0.0) - (h < 0.0);
}

int energy_sign(const ComplexField& f, const ModelParams& p) {
  return energy_sign(to_spectrum(f), p);
}

Peak peak_locate(const ComplexField& f) {
  const std::vector<double> rho2 = squared_modulus(f);
  const auto [lo, hi] = std::minmax_element(rho2.begin(), rho2.end());
  if (std::sqrt(*hi) - std::sqrt(*lo) < kFlatTolerance) throw NoPeak();
  const std::size_t i =
      static_cast<std::size_t>(std::distance(rho2.begin(), hi));
  const RefinedPeak r = refine_peak(f.grid(), rho2, i);
  return Peak{r.x, r.amplitude};
}

PeakTracker::PeakTracker(int hold_cells, double hold_fraction)
    : hold_cells_(hold_cells), hold_fraction_(hold_fraction) {
  if (hold_cells < 1)
    throw std::invalid_argument("tracker hold distance must be >= 1 cell");
  if (!(hold_fraction > 0.0) || hold_fraction > 1.0)
    throw std::invalid_argument("tracker hold fraction must lie in (0, 1]");
}

void PeakTracker::observe(double t, const ComplexField& u) {
  const std::vector<double> rho2 = squared_modulus(u);
  const std::size_t m = rho2.size();
  const auto [lo, hi] = std::minmax_element(rho2.begin(), rho2.end());
  if (std::sqrt(*hi) - std::sqrt(*lo) < kFlatTolerance) throw NoPeak();
  const std::ptrdiff_t global =
      static_cast<std::ptrdiff_t>(std::distance(rho2.begin(), hi));

  std::ptrdiff_t chosen = global;
  if (prev_index_ >= 0) {
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
    std::ptrdiff_t dist = std::abs(global - prev_index_);
    dist = std::min(dist, mm - dist);
    if (dist > hold_cells_) {
      // Hill-climb from the previous crest to the nearest local maximum.
      std::ptrdiff_t cur = prev_index_;
      for (std::size_t guard = 0; guard < m; ++guard) {
        const std::size_t c = static_cast<std::size_t>(cur);
        const double left = rho2[(c + m - 1) % m];
        const double right = rho2[(c + 1) % m];
        if (right > rho2[c] && right >= left) {
          cur = static_cast<std::ptrdiff_t>((c + 1) % m);
        } else if (left > rho2[c]) {
          cur = static_cast<std::ptrdiff_t>((c + m - 1) % m);
        } else {
          break;
        }
      }
      const double keep = hold_fraction_ * hold_fraction_ *
                          rho2[static_cast<std::size_t>(global)];
      if (rho2[static_cast<std::size_t>(cur)] >= keep) chosen = cur;
    }
  }

  const RefinedPeak r =
      refine_peak(u.grid(), rho2, static_cast<std::size_t>(chosen));
  const double L = u.grid().half_length();
  double unwrapped = r.x;
  if (!track_.times.empty()) {
    double delta = r.x - prev_raw_;
    if (delta > L) delta -= 2.0 * L;
    if (delta <= -L) delta += 2.0 * L;
    unwrapped = prev_unwrapped_ + delta;
  }
  prev_index_ = chosen;
  prev_raw_ = r.x;
  prev_unwrapped_ = unwrapped;
  track_.times.push_back(t);
  track_.positions.push_back(unwrapped);
  track_.amplitudes.push_back(r.amplitude);
}

std::vector<double> speed_estimate(const PeakTrack& track, int window) {
  if (window < 1 || window % 2 == 0)
    throw std::invalid_argument("speed window must be odd and positive");
  const std::size_t n = track.times.size();
  if (track.positions.size() != n)
    throw std::invalid_argument("track time and position counts differ");
  std::vector<double> speeds(n, 0.0);
  if (n < 2) return speeds;

  const std::size_t w = static_cast<std::size_t>(window);
  const std::size_t half = w / 2;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = (i >= half) ? i - half : 0;
    std::size_t hi = std::min(n - 1, lo + w - 1);
    lo = (hi >= w - 1) ? hi - (w - 1) : 0;
    if (hi == lo) continue;

    double tbar = 0.0;
    double xbar = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      tbar += track.times[j];
      xbar += track.positions[j];
    }
    const double count = static_cast<double>(hi - lo + 1);
    tbar /= count;
    xbar /= count;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double dt = track.times[j] - tbar;
      num += dt * (track.positions[j] - xbar);
      den += dt * dt;
    }
    speeds[i] = (den > 0.0) ? num / den : 0.0;
  }
  return speeds;
}

}  // namespace fnls
