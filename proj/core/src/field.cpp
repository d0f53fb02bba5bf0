#include "fnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fnls {

namespace {

void require_layout(const SpectralGrid& a, const SpectralGrid& b) {
  if (!a.same_layout(b))
    throw std::invalid_argument("grid layouts do not match");
}

}  // namespace

ComplexField::ComplexField(GridPtr grid, std::vector<Complex> samples)
    : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (!grid_) throw std::invalid_argument("field needs a grid");
  if (samples_.size() != grid_->points())
    throw std::invalid_argument("sample count does not match grid points");
}

ComplexField ComplexField::zeros(GridPtr grid) {
  if (!grid) throw std::invalid_argument("field needs a grid");
  std::vector<Complex> samples(grid->points(), Complex(0.0, 0.0));
  return ComplexField(std::move(grid), std::move(samples));
}

Spectrum::Spectrum(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) throw std::invalid_argument("spectrum needs a grid");
  if (coeffs_.size() != grid_->coeff_count())
    throw std::invalid_argument("coefficient count does not match grid modes");
}

Spectrum Spectrum::zeros(GridPtr grid) {
  if (!grid) throw std::invalid_argument("spectrum needs a grid");
  std::vector<Complex> coeffs(grid->coeff_count(), Complex(0.0, 0.0));
  return Spectrum(std::move(grid), std::move(coeffs));
}

double l2_norm(const ComplexField& f) {
  double acc = 0.0;
  for (const Complex& u : f.samples()) acc += std::norm(u);
  return std::sqrt(f.grid().spacing() * acc);
}

double l2_norm(const Spectrum& c) {
  double acc = 0.0;
  for (const Complex& v : c.coefficients()) acc += std::norm(v);
  return std::sqrt(2.0 * c.grid().half_length() * acc);
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
  require_layout(a.grid(), b.grid());
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return std::sqrt(a.grid().spacing() * acc);
}

double l2_distance(const Spectrum& a, const Spectrum& b) {
  require_layout(a.grid(), b.grid());
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  double acc = 0.0;
  for (std::size_t j = 0; j < ca.size(); ++j) acc += std::norm(ca[j] - cb[j]);
  return std::sqrt(2.0 * a.grid().half_length() * acc);
}

std::pair<double, double> component_l2_distance(const ComplexField& a,
                                                const ComplexField& b) {
  require_layout(a.grid(), b.grid());
  double accv = 0.0;
  double accw = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double dv = a[j].real() - b[j].real();
    const double dw = a[j].imag() - b[j].imag();
    accv += dv * dv;
    accw += dw * dw;
  }
  const double h = a.grid().spacing();
  return {std::sqrt(h * accv), std::sqrt(h * accw)};
}

}  // namespace fnls
