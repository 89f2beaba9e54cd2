#pragma once

// Internal numeric kernels: radix-2 complex FFT, Bluestein chirp transform
// and integer-checked cyclic convolution.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fpspec::detail {

using cplx = std::complex<double>;

std::size_t next_pow2(std::size_t n);

/// In-place iterative radix-2 FFT; size must be a power of two.
/// inverse = true applies the conjugate kernel and the 1/n scaling.
void fft_pow2(std::vector<cplx>& data, bool inverse);

/// X[k] = sum_n x[n] exp(-2 pi i n k / n_len) for arbitrary length, via the
/// chirp identity nk = (n^2 + k^2 - (k - n)^2) / 2 and a power-of-two
/// convolution.
std::vector<cplx> chirp_dft(std::span<const double> x);

/// out[k] = sum_{i + j = k mod n} a[i] b[j], rounded to integers. Aborts with
/// PrecisionLoss if any entry is further than 1e-3 from an integer.
std::vector<std::uint64_t> cyclic_convolve(std::span<const std::uint64_t> a,
                                           std::span<const std::uint64_t> b);

/// Cyclic reversal x -> x[-i mod n], turns a convolution into a correlation.
std::vector<std::uint64_t> cyclic_reverse(std::span<const std::uint64_t> a);

}  // namespace fpspec::detail
