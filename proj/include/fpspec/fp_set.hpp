#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fpspec/prime_field.hpp"
#include "fpspec/wide_int.hpp"

namespace fpspec {

/// Unweighted subset of F_p: membership bitmap and sorted elements kept in sync.
class FpSet {
public:
    explicit FpSet(Elem p);
    /// Elements are reduced mod p; duplicates collapse.
    FpSet(Elem p, std::span<const std::int64_t> values);

    static FpSet from_bitmap(Elem p, std::vector<std::uint8_t> bitmap);

    Elem modulus() const noexcept { return p_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(Elem x) const noexcept { return x < p_ && bitmap_[x] != 0; }
    std::span<const Elem> elements() const noexcept { return elements_; }
    std::span<const std::uint8_t> bitmap() const noexcept { return bitmap_; }
    double density() const noexcept {
        return static_cast<double>(elements_.size()) / static_cast<double>(p_);
    }

    bool operator==(const FpSet& other) const = default;

private:
    Elem p_;
    std::vector<std::uint8_t> bitmap_;
    std::vector<Elem> elements_;
};

/// Throws ZeroInSet when 0 is a member; `what` names the offending argument.
void require_no_zero(const FpSet& s, const char* what);

// ---- constructors ------------------------------------------------------

/// {1, ..., n}; requires 1 <= n <= p - 1.
FpSet interval(const PrimeField& field, std::uint64_t n);

/// Uniform sample without replacement, fully determined by (p, size, seed,
/// avoid_zero). The generator is mt19937_64 with an explicit rejection step,
/// so results do not depend on the standard library's distributions.
FpSet random_set(const PrimeField& field, std::uint64_t size, std::uint64_t seed,
                 bool avoid_zero);

/// The unique subgroup of F_p^* of order d.
FpSet mult_subgroup(const PrimeField& field, std::uint64_t d);

/// True when H is a nonempty subgroup of F_p^* (closure check, O(|H|^2)).
bool is_subgroup(const PrimeField& field, const FpSet& h);

/// lam * H for a verified subgroup H.
FpSet coset(const PrimeField& field, const FpSet& h, Elem lam);

/// A + B as a set, via cyclic bitmap shifts.
FpSet sumset(const PrimeField& field, const FpSet& a, const FpSet& b);
/// A - B as a set.
FpSet difference_set(const PrimeField& field, const FpSet& a, const FpSet& b);
/// AB as a set, via shifts of the exponent bitmap. Rejects 0 in A or B.
FpSet product_set(const PrimeField& field, const FpSet& a, const FpSet& b);

/// lam * A for lam != 0.
FpSet dilate(const PrimeField& field, const FpSet& a, Elem lam);

/// Sum over x of r_{AA+AA}(x)^2 with ordered-pair multiplicities, by
/// integer-checked convolution.
u128 rep_sq_sum_aa(const PrimeField& field, const FpSet& a);
/// Same quantity by enumerating all 4-tuples; |A| <= kBruteAAMax.
u128 rep_sq_sum_aa_brute(const PrimeField& field, const FpSet& a);
inline constexpr std::size_t kBruteAAMax = 24;

// ---- set file format ---------------------------------------------------
// Header line "p=<p>" followed by one decimal element per line.

void write_set(std::ostream& out, const FpSet& s);
FpSet read_set(std::istream& in);
/// Parses "1,2,4" (whitespace tolerated, negatives reduced mod p).
FpSet parse_set_list(Elem p, const std::string& text);

}  // namespace fpspec
