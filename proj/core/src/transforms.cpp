#include "fnls/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace fnls {

namespace {

// Cache of FFTW plans keyed by transform size. Plans are created with
// FFTW_ESTIMATE (deterministic plan choice) and FFTW_UNALIGNED so that one
// plan per size serves arbitrary caller buffers via fftw_execute_dft, which
// is safe to run concurrently on distinct arrays. Plan creation itself is
// not thread safe and is serialized here.
class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void forward(std::size_t n, const Complex* in, Complex* out) {
    run(n, FFTW_FORWARD, in, out);
  }

  void backward(std::size_t n, const Complex* in, Complex* out) {
    run(n, FFTW_BACKWARD, in, out);
  }

private:
  struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  void run(std::size_t n, int sign, const Complex* in, Complex* out) {
    fftw_plan plan = acquire(n, sign);
    // Out-of-place c2c transforms preserve their input; FFTW's new-array
    // execute only needs matching size and (here, unaligned) layout.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

  fftw_plan acquire(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    PlanPair& pair = plans_[n];
    fftw_plan& slot = (sign == FFTW_FORWARD) ? pair.forward : pair.backward;
    if (!slot) {
      std::vector<Complex> a(n), b(n);
      slot = fftw_plan_dft_1d(static_cast<int>(n),
                              reinterpret_cast<fftw_complex*>(a.data()),
                              reinterpret_cast<fftw_complex*>(b.data()), sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
      if (!slot) throw std::runtime_error("fftw plan creation failed");
    }
    return slot;
  }

  std::mutex mutex_;
  std::unordered_map<std::size_t, PlanPair> plans_;
};

// Nodes start at x = -L rather than 0, which shifts mode k by the phase
// e^{-i k pi} = (-1)^k relative to the plain DFT.
double centering_sign(std::ptrdiff_t k) { return (k % 2 != 0) ? -1.0 : 1.0; }

}  // namespace

namespace detail {

void fft_forward(std::size_t n, const Complex* in, Complex* out) {
  PlanCache::instance().forward(n, in, out);
}

void fft_backward(std::size_t n, const Complex* in, Complex* out) {
  PlanCache::instance().backward(n, in, out);
}

}  // namespace detail

Spectrum to_spectrum(const ComplexField& f) {
  return analyze(f.grid_ptr(), f.samples());
}

ComplexField from_spectrum(const Spectrum& c) {
  return ComplexField(c.grid_ptr(), synthesize(c, c.grid().points()));
}

std::vector<Complex> synthesize(const Spectrum& c, std::size_t m) {
  const SpectralGrid& g = c.grid();
  if (m < g.coeff_count())
    throw std::invalid_argument("synthesize needs at least 2N + 1 nodes");
  std::vector<Complex> packed(m, Complex(0.0, 0.0));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + mm) % mm);
    packed[bin] = c.coeff(k) * centering_sign(k);
  }
  std::vector<Complex> out(m);
  PlanCache::instance().backward(m, packed.data(), out.data());
  return out;
}

Spectrum analyze(GridPtr grid, std::span<const Complex> samples) {
  if (!grid) throw std::invalid_argument("analyze needs a grid");
  const std::size_t m = samples.size();
  if (m < grid->coeff_count())
    throw std::invalid_argument("analyze needs at least 2N + 1 samples");
  std::vector<Complex> bins(m);
  PlanCache::instance().forward(m, samples.data(), bins.data());
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<Complex> coeffs(grid->coeff_count());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid->modes());
  const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + mm) % mm);
    coeffs[static_cast<std::size_t>(k + n)] =
        bins[bin] * (scale * centering_sign(k));
  }
  return Spectrum(std::move(grid), std::move(coeffs));
}

std::size_t dealias_points(std::size_t modes, double sigma) {
  const std::size_t width = 2 * modes + 1;
  std::size_t needed;
  if (sigma == std::floor(sigma)) {
    needed = (static_cast<std::size_t>(sigma) + 1) * width;
  } else {
    needed = 2 * width;
  }
  std::size_t m = needed + (needed % 2);
  for (;; m += 2) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace fnls
