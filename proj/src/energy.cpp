#include "fpspec/energy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "convolution.hpp"
#include "fpspec/error.hpp"
#include "fpspec/fourier.hpp"

namespace fpspec {

namespace {

std::vector<std::uint64_t> indicator(const FpSet& s) {
    std::vector<std::uint64_t> v(s.modulus(), 0);
    for (Elem x : s.elements()) v[x] = 1;
    return v;
}

std::vector<std::uint64_t> exponent_indicator(const PrimeField& field, const FpSet& s) {
    std::vector<std::uint64_t> v(field.group_order(), 0);
    for (Elem x : s.elements()) v[field.dlog(x)] = 1;
    return v;
}

RepFunction make_rep(RepDomain domain, std::vector<std::uint64_t> counts) {
    RepFunction rep;
    rep.domain = domain;
    rep.counts = std::move(counts);
    for (std::uint64_t c : rep.counts) rep.total += c;
    return rep;
}

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
    const u128 r = static_cast<u128>(a) * b;
    return r > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

}  // namespace

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::Brute: return "brute";
        case Method::Convolution: return "convolution";
        case Method::Fourier: return "fourier";
    }
    return "?";
}

u128 RepFunction::moment(unsigned k) const {
    u128 acc = 0;
    for (std::uint64_t c : counts) acc += ipow(c, k);
    return acc;
}

RepFunction rep_add(const PrimeField& field, const FpSet& a, const FpSet& b, AddSign sign,
                    Method method) {
    const Elem p = field.p();
    if (method == Method::Brute) {
        if (checked_product(a.size(), b.size()) > kBruteRepPairs) {
            fail(ErrorCode::TooLargeForBrute, "pair enumeration limited to |A||B| <= 10^6");
        }
        std::vector<std::uint64_t> counts(p, 0);
        for (Elem x : a.elements()) {
            for (Elem y : b.elements()) {
                ++counts[sign == AddSign::Plus ? field.add(x, y) : field.sub(x, y)];
            }
        }
        return make_rep(RepDomain::Additive, std::move(counts));
    }
    if (method != Method::Convolution) {
        fail(ErrorCode::InvalidArgument, "rep_add supports brute or convolution");
    }
    auto ib = indicator(b);
    if (sign == AddSign::Minus) ib = detail::cyclic_reverse(ib);
    return make_rep(RepDomain::Additive, detail::cyclic_convolve(indicator(a), ib));
}

RepFunction rep_mul(const PrimeField& field, const FpSet& a, const FpSet& b, MulOp op) {
    require_no_zero(a, "A");
    require_no_zero(b, "B");
    auto eb = exponent_indicator(field, b);
    if (op == MulOp::Ratio) eb = detail::cyclic_reverse(eb);
    return make_rep(RepDomain::MultiplicativeExponent,
                    detail::cyclic_convolve(exponent_indicator(field, a), eb));
}

EnergyValue additive_energy(const PrimeField& field, const FpSet& a, const FpSet& b,
                            Method method) {
    if (a.empty() || b.empty()) fail(ErrorCode::EmptySet, "additive energy of an empty set");
    EnergyValue out;
    out.method = method;
    switch (method) {
        case Method::Brute: {
            const std::uint64_t ab = checked_product(a.size(), b.size());
            if (checked_product(ab, ab) > kBruteEnergyQuads) {
                fail(ErrorCode::TooLargeForBrute, "quadruple enumeration limited to |A|^2|B|^2 <= 10^8");
            }
            // a1 + b1 = a2 + b2: the fourth coordinate is forced by the other three.
            for (Elem a1 : a.elements()) {
                for (Elem a2 : a.elements()) {
                    for (Elem b1 : b.elements()) {
                        if (b.contains(field.sub(field.add(a1, b1), a2))) ++out.value;
                    }
                }
            }
            break;
        }
        case Method::Convolution:
            out.value = rep_add(field, a, b, AddSign::Plus).moment(2);
            break;
        case Method::Fourier: {
            const auto ta = dft(field, a);
            const auto tb = dft(field, b);
            long double acc = 0.0L;
            for (Elem xi = 0; xi < field.p(); ++xi) {
                acc += static_cast<long double>(ta.mag2()[xi]) * tb.mag2()[xi];
            }
            acc /= field.p();
            out.value = static_cast<u128>(std::llround(static_cast<double>(acc)));
            break;
        }
    }
    return out;
}

BalancedEnergy balanced_additive_energy(const PrimeField& field, const FpSet& a) {
    if (a.empty()) fail(ErrorCode::EmptySet, "balanced energy of an empty set");
    BalancedEnergy out;
    const auto table = dft(field, a);
    long double acc = 0.0L;
    for (double m2 : balanced_mag2(table)) acc += static_cast<long double>(m2) * m2;
    out.fourier = static_cast<double>(acc / field.p());

    const u128 exact = additive_energy(field, a, a, Method::Convolution).value;
    const long double n = static_cast<long double>(a.size());
    out.identity = static_cast<double>(static_cast<long double>(to_double(exact)) -
                                       n * n * n * n / field.p());
    return out;
}

EnergyValue mult_energy_k(const PrimeField& field, const FpSet& r, unsigned k) {
    if (k < 1 || k > 4) fail(ErrorCode::InvalidArgument, "k must be in 1..4");
    require_no_zero(r, "R");
    EnergyValue out;
    out.value = rep_mul(field, r, r, MulOp::Ratio).moment(k);
    return out;
}

EnergyValue mult_energy_k_brute(const PrimeField& field, const FpSet& r, unsigned k) {
    if (k < 1 || k > 4) fail(ErrorCode::InvalidArgument, "k must be in 1..4");
    require_no_zero(r, "R");
    if (r.size() > kBruteMultMax) {
        fail(ErrorCode::TooLargeForBrute,
             "ratio enumeration limited to |R| <= " + std::to_string(kBruteMultMax));
    }
    const Elem p = field.p();
    std::vector<std::uint64_t> counts(p, 0);
    for (Elem y : r.elements()) {
        const auto inv_y = pow_mod(y, p - 2, p);
        for (Elem x : r.elements()) ++counts[mul_mod(x, inv_y, p)];
    }
    EnergyValue out;
    out.method = Method::Brute;
    for (std::uint64_t c : counts) out.value += ipow(c, k);
    return out;
}

EnergyValue sigma_mult(const PrimeField& field, const FpSet& r) {
    require_no_zero(r, "R");
    const auto rep = rep_mul(field, r, r, MulOp::Ratio);
    EnergyValue out;
    for (Elem lam : r.elements()) out.value += rep.counts[field.dlog(lam)];
    return out;
}

C4Aggregates c4_aggregates(const PrimeField& field, const FpSet& a) {
    require_no_zero(a, "A");
    if (a.size() > kBruteC4Max) {
        fail(ErrorCode::TooLargeForBrute,
             "C4 enumeration limited to |A| <= " + std::to_string(kBruteC4Max));
    }
    const Elem p = field.p();
    const auto el = a.elements();
    std::vector<Elem> inverse(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) {
        inverse[i] = static_cast<Elem>(pow_mod(el[i], p - 2, p));
    }

    // x lies in A n alpha A n beta A n gamma A iff x/alpha, x/beta, x/gamma are in A,
    // so each (x, a1, a2, a3) in A^4 is one membership witness for the triple
    // (x/a1, x/a2, x/a3).
    std::vector<u128> keys;
    keys.reserve(el.size() * el.size() * el.size() * el.size());
    for (Elem x : el) {
        for (std::size_t i = 0; i < el.size(); ++i) {
            const u128 alpha = field.mul(x, inverse[i]);
            for (std::size_t j = 0; j < el.size(); ++j) {
                const u128 beta = field.mul(x, inverse[j]);
                for (std::size_t l = 0; l < el.size(); ++l) {
                    const u128 gamma = field.mul(x, inverse[l]);
                    keys.push_back((alpha << 64) | (beta << 32) | gamma);
                }
            }
        }
    }
    std::sort(keys.begin(), keys.end());

    C4Aggregates out;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const u128 c = j - i;
        out.sum += c;
        out.sum_sq += c * c;
        i = j;
    }
    return out;
}

FourierSideCheck fourier_side_bound(const PrimeField& field, const FpSet& a, const FpSet& r,
                                    double eps) {
    require_no_zero(r, "R");
    if (a.empty()) fail(ErrorCode::EmptySet, "A is empty");
    const Elem p = field.p();
    const auto n = static_cast<std::int64_t>(a.size());

    FourierSideCheck out;
    const double scale = eps * static_cast<double>(n);
    out.lhs = scale * scale * scale * scale / p *
              to_double(mult_energy_k(field, r, 2).value);

    // p * (f_A o f_A)(y) = p r_{A-A}(y) - |A|^2, an integer.
    const auto diff = rep_add(field, a, a, AddSign::Minus);
    std::vector<std::int64_t> pw(p);
    for (Elem y = 0; y < p; ++y) {
        pw[y] = static_cast<std::int64_t>(p) * static_cast<std::int64_t>(diff.counts[y]) - n * n;
    }
    std::vector<Elem> inv_r;
    for (Elem lam : r.elements()) inv_r.push_back(field.inv(lam));
    __int128 acc = 0;
    for (Elem x = 0; x < p; ++x) {
        __int128 s = 0;
        for (Elem li : inv_r) s += pw[field.mul(x, li)];
        acc += s * s;
    }
    out.rhs_enumerated = static_cast<double>(static_cast<long double>(acc) /
                                             (static_cast<long double>(p) * p));

    const auto bal = balanced_mag2(dft(field, a));
    long double facc = 0.0L;
    for (Elem xi = 0; xi < p; ++xi) {
        long double s = 0.0L;
        for (Elem lam : r.elements()) s += bal[field.mul(lam, xi)];
        facc += s * s;
    }
    out.rhs_fourier = static_cast<double>(facc / p);
    return out;
}

void write_rep_csv(std::ostream& out, const RepFunction& rep) {
    out << "index,count\n";
    for (std::size_t i = 0; i < rep.counts.size(); ++i) out << i << ',' << rep.counts[i] << '\n';
}

}  // namespace fpspec
