#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fpspec/fp_set.hpp"
#include "fpspec/prime_field.hpp"
#include "fpspec/wide_int.hpp"

namespace fpspec {

enum class RepDomain { Additive, MultiplicativeExponent };
enum class AddSign { Plus, Minus };
enum class MulOp { Product, Ratio };
enum class Method { Brute, Convolution, Fourier };

const char* method_name(Method m) noexcept;

/// Exact representation function. Additive: indexed by x in F_p.
/// MultiplicativeExponent: indexed by e in Z/(p-1), standing for g^e.
struct RepFunction {
    RepDomain domain = RepDomain::Additive;
    std::vector<std::uint64_t> counts;
    u128 total = 0;

    /// Sum of counts^k.
    u128 moment(unsigned k) const;
};

struct EnergyValue {
    u128 value = 0;
    Method method = Method::Convolution;
};

// Brute-force size guards.
inline constexpr std::uint64_t kBruteRepPairs = 1'000'000;      // |A||B|
inline constexpr std::uint64_t kBruteEnergyQuads = 100'000'000;  // |A|^2 |B|^2
inline constexpr std::size_t kBruteC4Max = 40;                   // |A|

/// r_{A+B} or r_{A-B}.
RepFunction rep_add(const PrimeField& field, const FpSet& a, const FpSet& b, AddSign sign,
                    Method method = Method::Convolution);

/// r_{AB} or r_{A/B} on exponents, by cyclic convolution of exponent
/// indicators of length p - 1. Both sets must avoid 0.
RepFunction rep_mul(const PrimeField& field, const FpSet& a, const FpSet& b, MulOp op);

/// E+(A, B) = sum_x r_{A+B}(x)^2.
EnergyValue additive_energy(const PrimeField& field, const FpSet& a, const FpSet& b,
                            Method method);

struct BalancedEnergy {
    double fourier = 0.0;   ///< (1/p) sum_{xi != 0} |A^(xi)|^4
    double identity = 0.0;  ///< E+(A) - |A|^4 / p from the exact integer E+(A)
};

/// E+(f_A) for the balanced function of A, by both routes.
BalancedEnergy balanced_additive_energy(const PrimeField& field, const FpSet& a);

/// E_k^x(R) = sum_x r_{R/R}(x)^k for k in 1..4, through the dlog transport.
EnergyValue mult_energy_k(const PrimeField& field, const FpSet& r, unsigned k);

/// Same moments from r_{R/R} built by pair enumeration with Fermat inverses,
/// never touching the log tables. |R| <= kBruteMultMax.
EnergyValue mult_energy_k_brute(const PrimeField& field, const FpSet& r, unsigned k);
inline constexpr std::size_t kBruteMultMax = 2000;

/// sigma^x(R) = sum_{lam in R} r_{R/R}(lam).
EnergyValue sigma_mult(const PrimeField& field, const FpSet& r);

struct C4Aggregates {
    u128 sum = 0;     ///< sum over (alpha, beta, gamma) of |A n aA n bA n cA|
    u128 sum_sq = 0;  ///< sum of squares of the same
};

/// Materializes C4(A)(alpha, beta, gamma) by enumerating (x, a1, a2, a3) in A^4
/// with alpha = x/a1 etc. Requires 0 not in A and |A| <= kBruteC4Max.
C4Aggregates c4_aggregates(const PrimeField& field, const FpSet& a);

/// Both sides of the first inequality in the multiplicative-energy bound:
/// (eps |A|)^4 / p * E^x(R) <= sum_x r_{(f_A - f_A)R}(x)^2 for R inside
/// Spec_eps(A) \ {0}. The right side is computed by direct enumeration and
/// independently through the Fourier table.
struct FourierSideCheck {
    double lhs = 0.0;
    double rhs_enumerated = 0.0;
    double rhs_fourier = 0.0;
};
FourierSideCheck fourier_side_bound(const PrimeField& field, const FpSet& a, const FpSet& r,
                                    double eps);

/// CSV "index,count".
void write_rep_csv(std::ostream& out, const RepFunction& rep);

}  // namespace fpspec
