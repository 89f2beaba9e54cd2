#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <vector>

#include "fpspec/fp_set.hpp"
#include "fpspec/prime_field.hpp"

namespace fpspec {

/// Exponential sums A^(xi) = sum_{a in A} e(-xi a / p) for every frequency xi.
///
/// Construction enforces the table invariants: values[0] is exactly |A|, and
/// entries above p/2 are stored as conjugates of their mirror so that
/// mag2[xi] == mag2[p - xi] bit for bit.
class FourierTable {
public:
    Elem modulus() const noexcept { return p_; }
    std::size_t source_size() const noexcept { return source_size_; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    const std::vector<double>& mag2() const noexcept { return mag2_; }
    double magnitude(Elem xi) const { return std::sqrt(mag2_[xi]); }

    /// Builds a table from raw transform values, imposing the invariants.
    static FourierTable from_values(Elem p, std::size_t source_size,
                                    std::vector<std::complex<double>> raw);

private:
    Elem p_ = 0;
    std::size_t source_size_ = 0;
    std::vector<std::complex<double>> values_;
    std::vector<double> mag2_;
};

/// O(p |A|) evaluation; the reference for dft_fast.
FourierTable dft_direct(const PrimeField& field, const FpSet& a);

/// O(p log p) chirp-transform evaluation.
FourierTable dft_fast(const PrimeField& field, const FpSet& a);

/// Picks the direct path for tiny inputs and the chirp path otherwise.
FourierTable dft(const PrimeField& field, const FpSet& a);

struct SpectrumResult {
    double eps = 0.0;
    double threshold = 0.0;  ///< eps * |A|
    std::vector<Elem> elements;
    std::vector<double> magnitudes;
};

/// Relative slack on the spectrum threshold, applied toward inclusion.
inline constexpr double kSpectrumSlack = 1e-9;

/// All r with |A^(r)| >= eps |A| (1 - kSpectrumSlack), in increasing order.
SpectrumResult spectrum(const FourierTable& table, double eps);

/// Spec_eps(A) \ {0} as a set.
FpSet nonzero_spectrum_set(const SpectrumResult& spec, Elem p);

/// |f_A^(xi)|^2 for the balanced function f_A = A - |A|/p: mag2 off zero, 0 at zero.
std::vector<double> balanced_mag2(const FourierTable& table);

/// max_{r != 0} |A^(r)|.
double max_nonzero_magnitude(const FourierTable& table);

/// CSV "xi,re,im,mag2" with 12 significant digits.
void write_table_csv(std::ostream& out, const FourierTable& table);

}  // namespace fpspec
