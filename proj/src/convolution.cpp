#include "convolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fpspec/error.hpp"

namespace fpspec::detail {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1U;
    return m;
}

void fft_pow2(std::vector<cplx>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1U;
        for (; (j & bit) != 0; bit >>= 1U) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // Twiddles from direct evaluation, not by repeated multiplication, so the
    // error stays at a few ulps regardless of n.
    std::vector<cplx> twiddle(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
        twiddle[k] = {std::cos(angle), std::sin(angle)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1U) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx u = data[start + k];
                const cplx v = data[start + k + half] * twiddle[k * stride];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& z : data) z *= scale;
    }
}

std::vector<cplx> chirp_dft(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if (n == 1) return {cplx{x[0], 0.0}};

    // chirp[m] = exp(-i pi m^2 / n); m^2 is reduced mod 2n to keep the angle small.
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    std::vector<cplx> chirp(n);
    for (std::size_t m = 0; m < n; ++m) {
        const std::uint64_t sq = static_cast<std::uint64_t>(m) * m % two_n;
        const double angle = -std::numbers::pi * static_cast<double>(sq) /
                             static_cast<double>(n);
        chirp[m] = {std::cos(angle), std::sin(angle)};
    }

    const std::size_t len = next_pow2(2 * n - 1);
    std::vector<cplx> a(len), b(len);
    for (std::size_t m = 0; m < n; ++m) a[m] = x[m] * chirp[m];
    b[0] = std::conj(chirp[0]);
    for (std::size_t m = 1; m < n; ++m) {
        b[m] = std::conj(chirp[m]);
        b[len - m] = std::conj(chirp[m]);
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

std::vector<std::uint64_t> cyclic_convolve(std::span<const std::uint64_t> a,
                                           std::span<const std::uint64_t> b) {
    const std::size_t n = a.size();
    if (b.size() != n) fail(ErrorCode::InvalidArgument, "cyclic_convolve: length mismatch");
    if (n == 0) return {};

    const std::size_t len = next_pow2(2 * n - 1);
    std::vector<cplx> fa(len), fb(len);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = static_cast<double>(a[i]);
        fb[i] = static_cast<double>(b[i]);
    }
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (std::size_t i = 0; i < len; ++i) fa[i] *= fb[i];
    fft_pow2(fa, true);

    std::vector<std::uint64_t> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double v = fa[k].real();
        if (k + n < len) v += fa[k + n].real();
        const double r = std::nearbyint(v);
        if (std::abs(v - r) > 1e-3 || r < -0.5 || r > 9.0e15) {
            fail(ErrorCode::PrecisionLoss,
                 "convolution entry " + std::to_string(k) + " = " + std::to_string(v) +
                     " is not within 1e-3 of a representable integer");
        }
        out[k] = static_cast<std::uint64_t>(r < 0 ? 0 : r);
    }
    return out;
}

std::vector<std::uint64_t> cyclic_reverse(std::span<const std::uint64_t> a) {
    const std::size_t n = a.size();
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i == 0 ? 0 : n - i] = a[i];
    return out;
}

}  // namespace fpspec::detail
