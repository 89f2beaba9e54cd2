#include "fpspec/prime_field.hpp"

#include <array>
#include <string>

#include "fpspec/error.hpp"

namespace fpspec {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13,
                                                                 17, 19, 23, 29, 31, 37};
    for (std::uint64_t w : kWitnesses) {
        if (n % w == 0) return n == w;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : kWitnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generates = true;
        for (std::uint64_t q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    return 1;  // only reached for p = 2
}

PrimeField::PrimeField(std::uint64_t p) {
    if (p == 2) fail(ErrorCode::EvenPrime, "p = 2: an odd prime is required");
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p > kMaxModulus) {
        fail(ErrorCode::OutOfRange,
             "p = " + std::to_string(p) + " exceeds the dense-table limit " +
                 std::to_string(kMaxModulus));
    }
    p_ = static_cast<Elem>(p);
    g_ = static_cast<Elem>(smallest_primitive_root(p));

    pow_.resize(p_ - 1);
    dlog_.assign(p_, 0);
    std::uint64_t x = 1;
    for (std::uint32_t e = 0; e + 1 < p_; ++e) {
        pow_[e] = static_cast<Elem>(x);
        dlog_[x] = e;
        x = x * g_ % p_;
    }
}

std::uint32_t PrimeField::dlog(Elem x) const {
    if (x % p_ == 0) fail(ErrorCode::ZeroElement, "discrete log of 0 is undefined");
    return dlog_[x % p_];
}

Elem PrimeField::inv(Elem a) const {
    const std::uint32_t e = dlog(a);
    return pow_[e == 0 ? 0 : (p_ - 1) - e];
}

}  // namespace fpspec
