#include "fnls/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnls/transforms.hpp"

namespace fnls {

ModelParams::ModelParams(double s, double sigma) : s(s), sigma(sigma) {
  if (!(s > 0.0) || s > 1.0)
    throw std::invalid_argument("dispersion order s must lie in (0, 1]");
  if (!(sigma >= 0.5))
    throw std::invalid_argument("nonlinearity exponent sigma must be >= 1/2");
}

void ModelParams::require_wave_range() const {
  if (!(s > 0.5))
    throw std::invalid_argument(
        "solitary-wave machinery requires s in (1/2, 1]");
}

bool ModelParams::integer_sigma() const noexcept {
  return sigma == std::floor(sigma);
}

namespace {

Spectrum apply_multiplier(const Spectrum& c, auto&& mult) {
  const SpectralGrid& g = c.grid();
  std::vector<Complex> out(g.coeff_count());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  for (std::ptrdiff_t k = -n; k <= n; ++k)
    out[static_cast<std::size_t>(k + n)] = mult(g.wavenumber(k)) * c.coeff(k);
  return Spectrum(c.grid_ptr(), std::move(out));
}

}  // namespace

Spectrum frac_laplacian(const Spectrum& c, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  const double e = 2.0 * s;
  return apply_multiplier(
      c, [e](double kt) { return Complex(std::pow(std::abs(kt), e), 0.0); });
}

Spectrum half_operator(const Spectrum& c, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  return apply_multiplier(
      c, [s](double kt) { return Complex(std::pow(std::abs(kt), s), 0.0); });
}

Spectrum derivative(const Spectrum& c, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  return apply_multiplier(c, [order](double kt) {
    return std::pow(Complex(0.0, kt), order);
  });
}

double power_sigma(double rho_squared, double sigma) {
  if (rho_squared <= 0.0) return 0.0;
  const double si = std::floor(sigma);
  if (si == sigma && sigma <= 64.0) {
    double acc = 1.0;
    for (int i = 0; i < static_cast<int>(si); ++i) acc *= rho_squared;
    return acc;
  }
  return std::exp(sigma * std::log(rho_squared));
}

NonlinearEvaluator::NonlinearEvaluator(GridPtr grid, double sigma)
    : grid_(std::move(grid)),
      sigma_(sigma),
      points_(dealias_points(grid_->modes(), sigma)),
      padded_(points_),
      samples_(points_) {
  if (!(sigma >= 0.5))
    throw std::invalid_argument("nonlinearity exponent sigma must be >= 1/2");
}

void NonlinearEvaluator::apply(std::span<const Complex> coeffs,
                               std::span<Complex> out) {
  const std::size_t width = grid_->coeff_count();
  if (coeffs.size() != width || out.size() != width)
    throw std::invalid_argument("coefficient span does not match grid modes");

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid_->modes());
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(points_);
  std::fill(padded_.begin(), padded_.end(), Complex(0.0, 0.0));
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double sign = (k % 2 != 0) ? -1.0 : 1.0;
    padded_[static_cast<std::size_t>((k + m) % m)] =
        coeffs[static_cast<std::size_t>(k + n)] * sign;
  }
  detail::fft_backward(points_, padded_.data(), samples_.data());
  for (Complex& u : samples_) u *= power_sigma(std::norm(u), sigma_);
  detail::fft_forward(points_, samples_.data(), padded_.data());
  const double scale = 1.0 / static_cast<double>(points_);
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double sign = (k % 2 != 0) ? -1.0 : 1.0;
    out[static_cast<std::size_t>(k + n)] =
        padded_[static_cast<std::size_t>((k + m) % m)] * (scale * sign);
  }
}

Spectrum NonlinearEvaluator::apply(const Spectrum& c) {
  if (!c.grid().same_layout(*grid_))
    throw std::invalid_argument("spectrum grid does not match evaluator");
  Spectrum out = Spectrum::zeros(grid_);
  apply(c.coefficients(), out.coefficients());
  return out;
}

Spectrum nonlinear_term(const Spectrum& c, double sigma) {
  NonlinearEvaluator eval(c.grid_ptr(), sigma);
  return eval.apply(c);
}

Spectrum nonlinear_term(const ComplexField& f, double sigma) {
  return nonlinear_term(to_spectrum(f), sigma);
}

Spectrum rhs(const Spectrum& c, const ModelParams& p, bool include_nonlinear) {
  const SpectralGrid& g = c.grid();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  std::vector<Complex> out(g.coeff_count());
  const double e = 2.0 * p.s;
  if (include_nonlinear) {
    Spectrum nl = nonlinear_term(c, p.sigma);
    for (std::ptrdiff_t k = -n; k <= n; ++k) {
      const std::size_t j = static_cast<std::size_t>(k + n);
      const double sym = std::pow(std::abs(g.wavenumber(k)), e);
      out[j] = Complex(0.0, 1.0) * (nl.coefficients()[j] - sym * c.coeff(k));
    }
  } else {
    for (std::ptrdiff_t k = -n; k <= n; ++k) {
      const std::size_t j = static_cast<std::size_t>(k + n);
      const double sym = std::pow(std::abs(g.wavenumber(k)), e);
      out[j] = Complex(0.0, -sym) * c.coeff(k);
    }
  }
  return Spectrum(c.grid_ptr(), std::move(out));
}

}  // namespace fnls
