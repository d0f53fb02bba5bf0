#pragma once

#include <cstddef>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

// Fourier multiplier |k tilde|^{2s}; mode k = 0 maps to 0.
Spectrum frac_laplacian(const Spectrum& c, double s);

// Multiplier |k tilde|^s, the symmetric square root of the above.
Spectrum half_operator(const Spectrum& c, double s);

// Multiplier (i k tilde)^order.
Spectrum derivative(const Spectrum& c, int order = 1);

// (v^2 + w^2)^sigma with an exact zero at the origin. Integer sigma is
// evaluated by repeated multiplication, otherwise through exp(sigma log).
double power_sigma(double rho_squared, double sigma);

// Projection of |u|^{2 sigma} u onto the grid's modes, computed pointwise on
// a padded evaluation grid (see dealias_points). Owns its work buffers so a
// long-running caller pays no per-call allocation cost; one instance per
// thread of execution.
class NonlinearEvaluator {
public:
  NonlinearEvaluator(GridPtr grid, double sigma);

  const SpectralGrid& grid() const noexcept { return *grid_; }
  double sigma() const noexcept { return sigma_; }
  std::size_t evaluation_points() const noexcept { return points_; }

  // Fills `out` (DC-centered layout, size 2N + 1) from `coeffs`.
  void apply(std::span<const Complex> coeffs, std::span<Complex> out);
  Spectrum apply(const Spectrum& c);

private:
  GridPtr grid_;
  double sigma_;
  std::size_t points_;
  std::vector<Complex> padded_;
  std::vector<Complex> samples_;
};

// Same projection as a standalone call.
Spectrum nonlinear_term(const Spectrum& c, double sigma);
Spectrum nonlinear_term(const ComplexField& f, double sigma);

// Semidiscrete right-hand side d c_k / dt = -i |k tilde|^{2s} c_k
// + i (|u|^{2 sigma} u)^hat_k. `include_nonlinear = false` drops the second
// term (the free evolution).
Spectrum rhs(const Spectrum& c, const ModelParams& p,
             bool include_nonlinear = true);

}  // namespace fnls
