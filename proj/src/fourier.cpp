#include "fpspec/fourier.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "convolution.hpp"
#include "fpspec/error.hpp"

namespace fpspec {

FourierTable FourierTable::from_values(Elem p, std::size_t source_size,
                                       std::vector<std::complex<double>> raw) {
    if (raw.size() != p) fail(ErrorCode::InvalidArgument, "Fourier table length differs from p");
    FourierTable t;
    t.p_ = p;
    t.source_size_ = source_size;
    t.values_ = std::move(raw);
    t.values_[0] = {static_cast<double>(source_size), 0.0};
    for (Elem xi = 1; xi <= p / 2; ++xi) t.values_[p - xi] = std::conj(t.values_[xi]);
    t.mag2_.resize(p);
    for (Elem xi = 0; xi <= p / 2; ++xi) t.mag2_[xi] = std::norm(t.values_[xi]);
    for (Elem xi = 1; xi <= p / 2; ++xi) t.mag2_[p - xi] = t.mag2_[xi];
    return t;
}

FourierTable dft_direct(const PrimeField& field, const FpSet& a) {
    const Elem p = field.p();
    std::vector<std::complex<double>> twiddle(p);
    for (Elem k = 0; k < p; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
        twiddle[k] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<std::complex<double>> values(p);
    for (Elem xi = 0; xi <= p / 2; ++xi) {
        std::complex<double> acc{0.0, 0.0};
        for (Elem x : a.elements()) acc += twiddle[field.mul(xi, x)];
        values[xi] = acc;
    }
    return FourierTable::from_values(p, a.size(), std::move(values));
}

FourierTable dft_fast(const PrimeField& field, const FpSet& a) {
    const Elem p = field.p();
    std::vector<double> indicator(p);
    for (Elem x = 0; x < p; ++x) indicator[x] = a.contains(x) ? 1.0 : 0.0;
    return FourierTable::from_values(p, a.size(), detail::chirp_dft(indicator));
}

FourierTable dft(const PrimeField& field, const FpSet& a) {
    if (static_cast<std::uint64_t>(a.size()) * field.p() <= 50'000) return dft_direct(field, a);
    return dft_fast(field, a);
}

SpectrumResult spectrum(const FourierTable& table, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        fail(ErrorCode::BadEpsilon, "eps = " + std::to_string(eps) + " is not in (0, 1]");
    }
    if (table.source_size() == 0) fail(ErrorCode::EmptySet, "spectrum of the empty set");
    SpectrumResult out;
    out.eps = eps;
    out.threshold = eps * static_cast<double>(table.source_size());
    const double cut = out.threshold * (1.0 - kSpectrumSlack);
    const double cut2 = cut * cut;
    const auto& mag2 = table.mag2();
    for (Elem r = 0; r < table.modulus(); ++r) {
        if (mag2[r] >= cut2) {
            out.elements.push_back(r);
            out.magnitudes.push_back(std::sqrt(mag2[r]));
        }
    }
    return out;
}

FpSet nonzero_spectrum_set(const SpectrumResult& spec, Elem p) {
    std::vector<std::uint8_t> bits(p, 0);
    for (Elem r : spec.elements) {
        if (r != 0) bits[r] = 1;
    }
    return FpSet::from_bitmap(p, std::move(bits));
}

std::vector<double> balanced_mag2(const FourierTable& table) {
    std::vector<double> out = table.mag2();
    if (!out.empty()) out[0] = 0.0;
    return out;
}

double max_nonzero_magnitude(const FourierTable& table) {
    double best = 0.0;
    const auto& mag2 = table.mag2();
    for (std::size_t r = 1; r < mag2.size(); ++r) best = std::max(best, mag2[r]);
    return std::sqrt(best);
}

void write_table_csv(std::ostream& out, const FourierTable& table) {
    out << "xi,re,im,mag2\n";
    char buf[128];
    for (Elem xi = 0; xi < table.modulus(); ++xi) {
        const auto& v = table.values()[xi];
        std::snprintf(buf, sizeof buf, "%u,%.12g,%.12g,%.12g\n", xi, v.real(), v.imag(),
                      table.mag2()[xi]);
        out << buf;
    }
}

}  // namespace fpspec
