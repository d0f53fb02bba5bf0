#include "fnls/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fnls {

SpectralGrid::SpectralGrid(double half_length, std::size_t modes,
                           std::size_t points)
    : half_length_(half_length), modes_(modes), points_(points) {
  if (!(half_length > 0.0))
    throw std::invalid_argument("grid half length must be positive");
  if (modes == 0) throw std::invalid_argument("grid needs at least one mode");
  if (points_ == 0) points_ = 2 * modes_ + 2;
  if (points_ < 2 * modes_ + 1)
    throw std::invalid_argument("grid needs at least 2N + 1 sample points");

  const double unit = M_PI / half_length_;
  wavenumbers_.resize(coeff_count());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(modes_);
  for (std::ptrdiff_t k = 0; k <= n; ++k) {
    const double kt = static_cast<double>(k) * unit;
    wavenumbers_[static_cast<std::size_t>(n + k)] = kt;
    wavenumbers_[static_cast<std::size_t>(n - k)] = -kt;
  }
}

GridPtr make_grid(double half_length, std::size_t modes, std::size_t points) {
  return std::make_shared<const SpectralGrid>(half_length, modes, points);
}

}  // namespace fnls
