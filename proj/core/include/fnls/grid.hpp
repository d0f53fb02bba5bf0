#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace fnls {

// Periodic domain [-L, L] with the trigonometric basis e^{i k pi x / L},
// k = -N..N, sampled at `points` equispaced nodes x_j = -L + j (2L / points).
// The node count must satisfy points >= 2N + 1 so that sampling resolves
// every retained mode; the default is 2N + 2.
class SpectralGrid {
public:
  SpectralGrid(double half_length, std::size_t modes, std::size_t points = 0);

  double half_length() const noexcept { return half_length_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t coeff_count() const noexcept { return 2 * modes_ + 1; }
  double spacing() const noexcept {
    return 2.0 * half_length_ / static_cast<double>(points_);
  }
  double node(std::size_t j) const {
    return -half_length_ + spacing() * static_cast<double>(j);
  }

  // k tilde = k pi / L for k in [-N, N]. Negation-symmetric exactly.
  double wavenumber(std::ptrdiff_t k) const {
    return wavenumbers_[static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(modes_))];
  }
  // Indexed by k + N.
  const std::vector<double>& wavenumbers() const noexcept { return wavenumbers_; }

  bool same_layout(const SpectralGrid& other) const noexcept {
    return half_length_ == other.half_length_ && modes_ == other.modes_ &&
           points_ == other.points_;
  }

private:
  double half_length_;
  std::size_t modes_;
  std::size_t points_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(double half_length, std::size_t modes, std::size_t points = 0);

}  // namespace fnls
