#pragma once

#include <span>
#include <vector>

namespace fnls {

// Linearization of the flow about zero in the frame moving with speed cs:
// a mode e^{i(kx - omega t)} obeys omega_pm(k) = -cs k +- |k|^{2s}.
// Requires s in (1/2, 1] and cs > 0.
struct DispersionParams {
  DispersionParams(double cs, double s);

  double cs;
  double s;
};

enum class Branch { plus, minus };

double omega(double k, Branch branch, const DispersionParams& p);

// V_pm(k) = omega_pm(k) / k extended continuously by V_pm(0) = -cs.
double phase_velocity(double k, Branch branch, const DispersionParams& p);

// omega'_pm(k) = -cs +- 2s |k|^{2s - 1} sign(k); undefined at k = 0.
double group_velocity(double k, Branch branch, const DispersionParams& p);

// Smallest k > 0 with V_plus(k) = 0: k* = cs^{1 / (2s - 1)}. Tails with
// k > k* outrun the wave in the moving frame.
double phase_threshold(const DispersionParams& p);

// Smallest k > 0 with omega'_plus(k) = 0: (cs / 2s)^{1 / (2s - 1)}.
double group_threshold(const DispersionParams& p);

// Essential spectrum of the linearization about a solitary wave:
// lambda_pm(xi) = -(|xi|^{2s} + lambda1) +- xi lambda2. Its supremum over xi
// is negative exactly when |lambda2| < c(lambda1).
double essential_spectrum(double xi, Branch branch, double lambda1,
                          double lambda2, double s);

// One row of the oscillatory-tail direction table in the frame moving with
// the wave: a branch "leads" when both its phase and group velocities
// exceed the frame speed, i.e. V > 0 and omega' > 0 after the shift.
struct TailRow {
  double k;
  double omega_plus;
  double omega_minus;
  double phase_plus;    // V_+ (frame-shifted: -cs already included)
  double phase_minus;
  double group_plus;
  double group_minus;
  bool plus_leads;
  bool minus_trails;
};

// Evaluates the table on a strictly positive k grid.
std::vector<TailRow> tail_report(const DispersionParams& p,
                                 std::span<const double> k_grid);

// Uniform k grid for the report: `count` samples from k_lo to k_hi.
std::vector<double> uniform_grid(double k_lo, double k_hi, std::size_t count);

}  // namespace fnls
