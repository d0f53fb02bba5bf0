#include "fnls/waves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fnls/errors.hpp"
#include "fnls/operators.hpp"
#include "fnls/transforms.hpp"

namespace fnls {

namespace {

void require_wave_s(double s) {
  if (!(s > 0.5) || s > 1.0)
    throw std::invalid_argument(
        "solitary-wave machinery requires s in (1/2, 1]");
}

// L hat(k) = |k tilde|^{2s} + lambda1 - lambda2 k tilde, the positive symbol
// of the stationary operator for admissible parameters.
std::vector<double> stationary_symbol(const SpectralGrid& g,
                                      const WaveParams& p) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  std::vector<double> sym(g.coeff_count());
  const double e = 2.0 * p.model.s;
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double kt = g.wavenumber(k);
    sym[static_cast<std::size_t>(k + n)] =
        std::pow(std::abs(kt), e) + p.lambda1 - p.lambda2 * kt;
  }
  return sym;
}

double coeff_norm(const std::vector<Complex>& v, double half_length) {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return std::sqrt(2.0 * half_length * acc);
}

}  // namespace

double existence_bound(double lambda1, double s) {
  require_wave_s(s);
  if (!(lambda1 > 0.0))
    throw std::invalid_argument("lambda1 must be positive");
  const double q = (2.0 * s - 1.0) / (2.0 * s);
  return 2.0 * s * std::pow(lambda1 / (2.0 * s - 1.0), q);
}

double phase_coefficient(double lambda2, double s) {
  require_wave_s(s);
  if (lambda2 == 0.0) return 0.0;
  const double mag =
      std::pow(std::abs(lambda2) / (2.0 * s), 1.0 / (2.0 * s - 1.0));
  return std::copysign(mag, lambda2);
}

WaveParams::WaveParams(const ModelParams& model, double lambda1,
                       double lambda2, double x0, double theta0)
    : model(model),
      lambda1(lambda1),
      lambda2(lambda2),
      x0(x0),
      theta0(theta0),
      phase(Phase::linear(0.0)) {
  model.require_wave_range();
  if (!(lambda1 > 0.0))
    throw std::invalid_argument("lambda1 must be positive");
}

WaveParams WaveParams::traveling(const ModelParams& model, double lambda1,
                                 double lambda2, double x0, double theta0) {
  WaveParams p(model, lambda1, lambda2, x0, theta0);
  p.phase = Phase::linear(phase_coefficient(lambda2, model.s));
  return p;
}

WaveParams WaveParams::chirped(const ModelParams& model, double lambda1,
                               double lambda2, double x0, double theta0) {
  WaveParams p(model, lambda1, lambda2, x0, theta0);
  p.phase = Phase::quadratic();
  return p;
}

bool WaveParams::admissible() const {
  return std::abs(lambda2) < existence_bound(lambda1, model.s);
}

void WaveParams::require_admissible() const {
  if (!admissible())
    throw Inadmissible(lambda1, lambda2, existence_bound(lambda1, model.s));
}

Profile exact_soliton(const WaveParams& p, GridPtr grid) {
  if (p.model.s != 1.0)
    throw std::invalid_argument("closed-form soliton exists only for s = 1");
  const double a = p.lambda1 - 0.25 * p.lambda2 * p.lambda2;
  if (!(a > 0.0)) throw NonPositiveA(a);

  const double sigma = p.model.sigma;
  const double amp = std::pow(a * (sigma + 1.0), 1.0 / (2.0 * sigma));
  const double rate = sigma * std::sqrt(a);
  std::vector<Complex> samples(grid->points());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double y = grid->node(j) - p.x0;
    const double rho = amp * std::pow(1.0 / std::cosh(rate * y), 1.0 / sigma);
    samples[j] = rho * std::polar(1.0, 0.5 * p.lambda2 * y + p.theta0);
  }

  WaveParams out = p;
  out.phase = Phase::linear(0.5 * p.lambda2);
  ComplexField u0(std::move(grid), std::move(samples));
  const double res = profile_residual(u0, out);
  return Profile{std::move(u0), out, res};
}

Profile solve_profile(const WaveParams& p, GridPtr grid, double tol,
                      int max_iter) {
  p.require_admissible();
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1)
    throw std::invalid_argument("iteration cap must be >= 1");

  const std::vector<double> sym = stationary_symbol(*grid, p);

  std::vector<Complex> seed(grid->points());
  for (std::size_t j = 0; j < seed.size(); ++j) {
    const double y = grid->node(j) - p.x0;
    seed[j] = std::exp(-y * y) * std::polar(1.0, p.phase(y) + p.theta0);
  }
  Spectrum c = analyze(grid, seed);

  NonlinearEvaluator eval(grid, p.model.sigma);
  const double gamma = (2.0 * p.model.sigma + 1.0) / (2.0 * p.model.sigma);
  const double L = grid->half_length();
  const std::size_t w = grid->coeff_count();

  std::vector<Complex> residual(w);
  std::vector<Complex> best = {};
  double best_r = std::numeric_limits<double>::infinity();
  int since_improve = 0;
  int iter = 0;
  for (iter = 1; iter <= max_iter; ++iter) {
    Spectrum nl = eval.apply(c);
    const auto cc = c.coefficients();
    const auto nc = nl.coefficients();

    for (std::size_t j = 0; j < w; ++j) residual[j] = nc[j] - sym[j] * cc[j];
    const double r = coeff_norm(residual, L);
    if (r < best_r * (1.0 - 1e-3)) {
      best_r = r;
      best.assign(cc.begin(), cc.end());
      since_improve = 0;
    } else {
      ++since_improve;
    }
    // The iteration converges linearly, so a run of non-improving sweeps
    // means the rounding floor (or a genuine plateau) has been reached.
    if (since_improve >= 8) break;

    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
      num += sym[j] * std::norm(cc[j]);
      den += (std::conj(cc[j]) * nc[j]).real();
    }
    if (!(den > 0.0)) throw Stagnation(iter, r);
    const double quotient = std::pow(num / den, gamma);
    for (std::size_t j = 0; j < w; ++j)
      c.coefficients()[j] = quotient * nc[j] / sym[j];
  }

  if (!(best_r <= tol)) throw Stagnation(iter, best_r);
  Spectrum converged(grid, std::move(best));
  return Profile{from_spectrum(converged), p, best_r};
}

double profile_residual(const ComplexField& u0, const WaveParams& p) {
  const Spectrum c = to_spectrum(u0);
  const Spectrum nl = nonlinear_term(c, p.model.sigma);
  const std::vector<double> sym = stationary_symbol(u0.grid(), p);
  std::vector<Complex> residual(c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    residual[j] = nl.coefficients()[j] - sym[j] * c.coefficients()[j];
  return coeff_norm(residual, u0.grid().half_length());
}

ComplexField traveling_solution(const Profile& prof, double t) {
  // At t = 0 the orbit is the stored profile itself; skip the transform
  // round-trip so the caller gets it bit-for-bit.
  if (t == 0.0) return prof.u0;
  Spectrum c = to_spectrum(prof.u0);
  const SpectralGrid& g = c.grid();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  const double l1 = prof.params.lambda1;
  const double l2 = prof.params.lambda2;
  for (std::ptrdiff_t k = -n; k <= n; ++k)
    c.coeff(k) *= std::polar(1.0, (l1 - g.wavenumber(k) * l2) * t);
  return from_spectrum(c);
}

DecayFit decay_fit(const Profile& prof, double window_lo, double window_hi) {
  const SpectralGrid& g = prof.u0.grid();
  if (!(window_lo > 0.0) || !(window_hi > window_lo) ||
      window_hi > g.half_length())
    throw std::invalid_argument("decay window must satisfy 0 < lo < hi <= L");

  std::vector<double> xs;
  std::vector<double> ys;
  constexpr double floor = 100.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t j = 0; j < prof.u0.size(); ++j) {
    const double x = g.node(j);
    if (x < window_lo || x > window_hi) continue;
    const double rho = std::abs(prof.u0[j]);
    if (rho < floor)
      throw std::invalid_argument(
          "tail amplitude is below the rounding floor in the decay window");
    xs.push_back(std::log(x));
    ys.push_back(std::log(rho));
  }
  if (xs.size() < 8)
    throw std::invalid_argument("decay window holds fewer than 8 nodes");

  const double n = static_cast<double>(xs.size());
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    xbar += xs[j];
    ybar += ys[j];
  }
  xbar /= n;
  ybar /= n;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    num += (xs[j] - xbar) * (ys[j] - ybar);
    den += (xs[j] - xbar) * (xs[j] - xbar);
  }
  const double slope = num / den;
  const double intercept = ybar - slope * xbar;
  double rss = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double e = ys[j] - (intercept + slope * xs[j]);
    rss += e * e;
  }
  return DecayFit{std::exp(intercept), slope, std::sqrt(rss / n)};
}

}  // namespace fnls
