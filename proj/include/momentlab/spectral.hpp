#pragma once

// Arbitrary-length discrete Fourier transform.
//
// Convention, with e(t) = exp(2*pi*i*t) and L the input length:
//   dft(x)[k]  = sum_a x[a] * e(-k*a/L)
//   idft(x)[a] = (1/L) * sum_k x[k] * e(+k*a/L)
//
// Lengths that are not powers of two go through Bluestein's chirp-z
// reduction onto a power-of-two transform. Rounding error is O(sqrt(L)*ulp)
// relative to the input norm; the unit tests enforce this against a naive
// O(L^2) evaluation.
//
// Pure functions: scratch is per-call, cached plans are immutable after
// construction, so concurrent calls are safe.

#include <complex>
#include <vector>

namespace momentlab::spectral {

using cvec = std::vector<std::complex<double>>;

cvec dft(const cvec& input);
cvec idft(const cvec& input);

} // namespace momentlab::spectral
