#pragma once

namespace fnls {

// Equation parameters: dispersion order s in (0, 1] and nonlinearity
// exponent sigma >= 1/2 in i u_t - (-d_xx)^s u + |u|^{2 sigma} u = 0.
struct ModelParams {
  ModelParams(double s, double sigma);

  // Solitary waves and the dispersion analysis additionally need s > 1/2.
  void require_wave_range() const;

  bool integer_sigma() const noexcept;

  double s;
  double sigma;
};

}  // namespace fnls
