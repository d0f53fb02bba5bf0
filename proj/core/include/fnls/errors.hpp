#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fnls {

namespace detail {
// std::to_string(double) rounds to six fixed decimals, which hides small
// residuals entirely; errors carry them in scientific form instead.
inline std::string error_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace detail

// Iterative stage solve failed to reach tolerance. `step_index` and `time`
// identify the offending time step when thrown from integrate(); both are
// zero when a substep is driven directly.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(int iterations, double residual,
                 std::size_t step_index = 0, double time = 0.0)
      : std::runtime_error(
            "stage iteration failed to converge after " +
            std::to_string(iterations) + " iterations (relative residual " +
            detail::error_number(residual) + ") at step " +
            std::to_string(step_index) + ", t = " + std::to_string(time)),
        iterations(iterations),
        residual(residual),
        step_index(step_index),
        time(time) {}

  NonConvergence with_context(std::size_t step, double t) const {
    return NonConvergence(iterations, residual, step, t);
  }

  int iterations;
  double residual;
  std::size_t step_index;
  double time;
};

// Requested solitary-wave parameters violate the existence condition
// |lambda2| < c(lambda1) = 2s (lambda1 / (2s-1))^((2s-1)/(2s)).
class Inadmissible : public std::runtime_error {
public:
  Inadmissible(double lambda1, double lambda2, double speed_bound)
      : std::runtime_error("inadmissible wave parameters: |lambda2| = " +
                           std::to_string(std::abs(lambda2)) +
                           " exceeds the existence bound c(lambda1 = " +
                           std::to_string(lambda1) + ") = " +
                           std::to_string(speed_bound)),
        lambda1(lambda1),
        lambda2(lambda2),
        speed_bound(speed_bound) {}

  double lambda1;
  double lambda2;
  double speed_bound;
};

// Profile iteration stopped making progress above the requested tolerance.
class Stagnation : public std::runtime_error {
public:
  Stagnation(int iterations, double residual)
      : std::runtime_error("profile iteration stagnated after " +
                           std::to_string(iterations) +
                           " iterations at residual " +
                           detail::error_number(residual)),
        iterations(iterations),
        residual(residual) {}

  int iterations;
  double residual;
};

// Field is flat to rounding; no peak can be located.
class NoPeak : public std::runtime_error {
public:
  NoPeak() : std::runtime_error("field is flat, no peak to locate") {}
};

// Closed-form soliton needs a = lambda1 - lambda2^2/4 > 0.
class NonPositiveA : public std::runtime_error {
public:
  explicit NonPositiveA(double a)
      : std::runtime_error("soliton parameter a = lambda1 - lambda2^2/4 = " +
                           std::to_string(a) + " is not positive"),
        a(a) {}

  double a;
};

}  // namespace fnls
