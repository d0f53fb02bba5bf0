#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fnls/field.hpp"

namespace fnls {

// Forward transform: nodal values on the grid's points to basis coefficients
// c_k = (1/2L) integral u e^{-i k pi x / L} dx, exact for resolved modes.
Spectrum to_spectrum(const ComplexField& f);

// Inverse transform: exact evaluation of sum c_k e^{i k pi x / L} at the
// grid nodes.
ComplexField from_spectrum(const Spectrum& c);

// Evaluates the trigonometric polynomial at m >= 2N + 1 equispaced nodes
// x_j = -L + j (2L / m).
std::vector<Complex> synthesize(const Spectrum& c, std::size_t m);

// Projects samples taken at m >= 2N + 1 equispaced nodes onto the grid's
// modes k = -N..N. Inverse of synthesize for resolved content.
Spectrum analyze(GridPtr grid, std::span<const Complex> samples);

// Smallest even 7-smooth node count on which products needed by the
// |u|^{2 sigma} u term are alias-free: at least (sigma + 1)(2N + 1) points
// for integer sigma. Non-integer sigma has no finite bandwidth; the
// conventional 2(2N + 1) padding is used and the projection is then an
// approximation rather than exact.
std::size_t dealias_points(std::size_t modes, double sigma);

namespace detail {

// Raw unnormalized DFTs (e^{-i 2 pi j m / n} forward) on caller buffers,
// out of place, in != out. Plans are cached per size; concurrent calls on
// distinct buffers are safe.
void fft_forward(std::size_t n, const Complex* in, Complex* out);
void fft_backward(std::size_t n, const Complex* in, Complex* out);

}  // namespace detail

}  // namespace fnls
