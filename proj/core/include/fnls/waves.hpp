#pragma once

#include <utility>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

// Largest admissible |lambda2| for a solitary wave with frequency lambda1:
// c(lambda1) = 2s (lambda1 / (2s - 1))^((2s - 1) / (2s)). Requires
// s in (1/2, 1] and lambda1 > 0.
double existence_bound(double lambda1, double s);

// Slope A of the linear far-field phase theta(x) = A x, the unique real root
// of 2s A |A|^{2s - 2} = lambda2:
// A = sign(lambda2) (|lambda2| / 2s)^(1 / (2s - 1)); A(0) = 0.
double phase_coefficient(double lambda2, double s);

// Carrier phase attached to the modulus profile: theta(y) = A y (linear,
// traveling) or theta(y) = y^2 (a chirped diagnostic seed).
struct Phase {
  enum class Kind { linear, quadratic };

  static Phase linear(double slope) { return Phase{Kind::linear, slope}; }
  static Phase quadratic() { return Phase{Kind::quadratic, 0.0}; }

  double operator()(double y) const {
    return kind == Kind::linear ? slope * y : y * y;
  }

  Kind kind;
  double slope;
};

// Ansatz u0(x) = rho(x - x0) e^{i (theta(x - x0) + theta0)} solving
//   -(-d_xx)^s u0 + |u0|^{2 sigma} u0 - lambda1 u0 - i lambda2 u0' = 0.
struct WaveParams {
  WaveParams(const ModelParams& model, double lambda1, double lambda2,
             double x0 = 0.0, double theta0 = 0.0);

  // Same, but with the far-field phase slope derived from lambda2.
  static WaveParams traveling(const ModelParams& model, double lambda1,
                              double lambda2, double x0 = 0.0,
                              double theta0 = 0.0);
  // Chirped seed variant used in resolution experiments.
  static WaveParams chirped(const ModelParams& model, double lambda1,
                            double lambda2, double x0 = 0.0,
                            double theta0 = 0.0);

  bool admissible() const;
  void require_admissible() const;  // throws Inadmissible

  ModelParams model;
  double lambda1;
  double lambda2;
  double x0;
  double theta0;
  Phase phase;
};

// A computed standing/traveling profile and the residual of the stationary
// equation it satisfies (L^2 norm over coefficients).
struct Profile {
  ComplexField u0;
  WaveParams params;
  double residual;
};

// Closed-form s = 1 solitary wave: rho(y) = (a (sigma + 1))^{1 / (2 sigma)}
// sech(sigma sqrt(a) y)^{1 / sigma}, theta(y) = (lambda2 / 2) y, with
// a = lambda1 - lambda2^2 / 4 > 0 (else NonPositiveA).
Profile exact_soliton(const WaveParams& p, GridPtr grid);

// Fixed-point profile solver. Iterates
//   c <- M^gamma (|u|^{2 sigma} u)^hat / (|k tilde|^{2s} + lambda1
//        - lambda2 k tilde),
// gamma = (2 sigma + 1) / (2 sigma), M the quotient of the quadratic forms,
// seeded with a unit Gaussian carrying the requested phase. Iterates past
// `tol` while the residual keeps improving, so converged profiles typically
// sit near the rounding floor. Throws Inadmissible outside the existence
// region and Stagnation when the residual plateaus above `tol`.
Profile solve_profile(const WaveParams& p, GridPtr grid, double tol = 1e-10,
                      int max_iter = 10000);

// Residual of the stationary equation for an arbitrary field.
double profile_residual(const ComplexField& u0, const WaveParams& p);

// The profile transported to time t:
// c_k(t) = c_k(0) e^{-i k tilde lambda2 t} e^{i lambda1 t}.
ComplexField traveling_solution(const Profile& prof, double t);

// Power-law fit rho(x) ~ K x^exponent over a window of the right tail,
// by least squares on log rho versus log x. Throws std::invalid_argument
// when the window holds fewer than 8 nodes or the tail sits below 100 times
// machine epsilon (no algebraic decay to measure).
struct DecayFit {
  double prefactor;
  double exponent;
  double rms_log_residual;
};

DecayFit decay_fit(const Profile& prof, double window_lo, double window_hi);

}  // namespace fnls
