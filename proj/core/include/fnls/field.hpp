#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "fnls/grid.hpp"

namespace fnls {

using Complex = std::complex<double>;

// Nodal values u_j = u(x_j) of a trigonometric polynomial on the grid.
class ComplexField {
public:
  ComplexField(GridPtr grid, std::vector<Complex> samples);
  static ComplexField zeros(GridPtr grid);

  const SpectralGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::span<const Complex> samples() const noexcept { return samples_; }
  std::span<Complex> samples() noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Complex& operator[](std::size_t j) const { return samples_[j]; }
  Complex& operator[](std::size_t j) { return samples_[j]; }

private:
  GridPtr grid_;
  std::vector<Complex> samples_;
};

// Basis coefficients c_k, k = -N..N, stored DC-centered at index k + N.
class Spectrum {
public:
  Spectrum(GridPtr grid, std::vector<Complex> coeffs);
  static Spectrum zeros(GridPtr grid);

  const SpectralGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  Complex coeff(std::ptrdiff_t k) const { return coeffs_[index(k)]; }
  Complex& coeff(std::ptrdiff_t k) { return coeffs_[index(k)]; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  std::span<Complex> coefficients() noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

private:
  std::size_t index(std::ptrdiff_t k) const {
    return static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(grid_->modes()));
  }

  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

// L^2(-L, L) norms: rectangle rule on nodal values (exact for resolved trig
// polynomials) and the Parseval form 2L sum |c_k|^2 on coefficients.
double l2_norm(const ComplexField& f);
double l2_norm(const Spectrum& c);
double l2_distance(const ComplexField& a, const ComplexField& b);
double l2_distance(const Spectrum& a, const Spectrum& b);

// L^2 distances of real and imaginary parts, in that order.
std::pair<double, double> component_l2_distance(const ComplexField& a,
                                                const ComplexField& b);

}  // namespace fnls
