#pragma once

#include <cstddef>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"

namespace fnls {

// Conserved functionals of the semidiscrete flow:
//   mass     I1 = (1/2) integral |u|^2           = L sum |c_k|^2
//   momentum I2 = (1/2) integral Im(conj(u) u_x) = L sum k~ |c_k|^2
//   energy   H  = (1/2) integral |(-d_xx)^{s/2} u|^2
//               - 1/(2 sigma + 2) integral |u|^{2 sigma + 2}
// The nonlinear integral is a rectangle rule on the dealiased evaluation
// grid, exact for integer sigma.
struct InvariantSet {
  double mass;
  double momentum;
  double energy;
};

InvariantSet invariants(const Spectrum& c, const ModelParams& p);
InvariantSet invariants(const ComplexField& f, const ModelParams& p);

// Sign of H: -1, 0, or +1.
int energy_sign(const ComplexField& f, const ModelParams& p);
int energy_sign(const Spectrum& c, const ModelParams& p);

struct Peak {
  double position;
  double amplitude;
};

// Argmax of |u| refined by a three-point quadratic fit of |u|^2 around the
// winning node (cyclic neighbors). Throws NoPeak when max |u| - min |u|
// < 1e-14.
Peak peak_locate(const ComplexField& f);

struct PeakTrack {
  std::vector<double> times;
  std::vector<double> positions;   // unwrapped: continuous across the seam
  std::vector<double> amplitudes;
  std::vector<double> speeds;      // filled by speed_estimate
};

// Follows one crest through periodic wrap-around. When the global argmax
// jumps by more than `hold_cells` grid cells in one observation but a local
// maximum within `hold_fraction` of the global one persists near the old
// location, the tracker stays with the old crest (a transient interaction
// peak is not followed).
class PeakTracker {
public:
  explicit PeakTracker(int hold_cells = 10, double hold_fraction = 0.9);

  void observe(double t, const ComplexField& u);
  const PeakTrack& track() const noexcept { return track_; }
  PeakTrack take() { return std::move(track_); }

private:
  int hold_cells_;
  double hold_fraction_;
  PeakTrack track_;
  std::ptrdiff_t prev_index_ = -1;
  double prev_raw_ = 0.0;
  double prev_unwrapped_ = 0.0;
};

// Sliding-window least-squares slope of position versus time; the window
// (odd, default 11) is clipped at the ends of the track. Degenerate windows
// (fewer than two samples) report zero.
std::vector<double> speed_estimate(const PeakTrack& track, int window = 11);

}  // namespace fnls
