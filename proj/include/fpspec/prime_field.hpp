#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fpspec {

/// Element of F_p stored as its canonical residue in [0, p).
using Elem = std::uint32_t;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Odd prime field with its smallest primitive root and dense
/// discrete-log / power tables. Immutable after construction.
class PrimeField {
public:
    /// Largest modulus for which the dense tables are built.
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 25;

    explicit PrimeField(std::uint64_t p);

    Elem p() const noexcept { return p_; }
    Elem generator() const noexcept { return g_; }
    /// Order of the multiplicative group, p - 1.
    std::uint32_t group_order() const noexcept { return p_ - 1; }

    /// e in [0, p-2] with g^e = x. Throws ZeroElement for x = 0.
    std::uint32_t dlog(Elem x) const;
    /// g^e for any e (reduced mod p-1).
    Elem pow(std::uint64_t e) const noexcept { return pow_[e % (p_ - 1)]; }

    Elem add(Elem a, Elem b) const noexcept {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// Multiplicative inverse via the log tables. Throws ZeroElement for 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem reduce(std::int64_t v) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        const std::int64_t r = v % m;
        return static_cast<Elem>(r < 0 ? r + m : r);
    }

    std::span<const std::uint32_t> dlog_table() const noexcept { return dlog_; }
    std::span<const Elem> pow_table() const noexcept { return pow_; }

private:
    Elem p_;
    Elem g_;
    std::vector<std::uint32_t> dlog_;  // dlog_[0] unused
    std::vector<Elem> pow_;            // length p - 1
};

/// Smallest primitive root of an odd prime p, by testing g^((p-1)/q) != 1.
std::uint64_t smallest_primitive_root(std::uint64_t p);

}  // namespace fpspec
