#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpspec/fourier.hpp"
#include "fpspec/fp_set.hpp"
#include "fpspec/incidence.hpp"
#include "fpspec/prime_field.hpp"
#include "fpspec/wide_int.hpp"

namespace fpspec {

/// One verification record. `ratio` is lhs / rhs (0 when both vanish, +inf
/// when only rhs does); `ratio_log` divides it by max(1, log2(|A|)^2) to
/// absorb the polylogarithmic slack of the softened inequalities.
struct TheoremReport {
    std::string theorem_id;
    std::string family;
    std::string rule;
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    std::size_t set_size = 0;
    double delta = 0.0;
    std::size_t r_size = 0;
    bool precondition_ok = false;
    std::optional<u128> lhs_exact;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double ratio_log = 0.0;
    std::string notes;
};

enum class RRule { FullSpectrum, CosetSearch, Explicit };
const char* rule_name(RRule r) noexcept;

/// First coset lam * H (lam the smallest member of its coset, cosets visited
/// by increasing representative) that lies inside Spec_eps(A) \ {0}, where
/// H = A / min(A) must be a multiplicative subgroup. nullopt if none qualifies
/// or A is not a coset of a subgroup.
std::optional<FpSet> find_spectral_coset(const PrimeField& field, const FpSet& a,
                                         const SpectrumResult& spec);

/// Multiplicative energy of R inside Spec_eps(A) \ {0} against
/// eps^-4 delta^-1 |R|^{3/2}; hypothesis p <= eps^2 |A|^3 with R nonempty.
TheoremReport verify_main(const PrimeField& field, const FpSet& a, double eps, RRule rule,
                          const FpSet* explicit_r = nullptr);

/// E4(R) for R = Spec_eps(A) \ {0} against eps^-16 delta^-4 (E+(f_A)/|A|^3)^2.
TheoremReport verify_e4(const PrimeField& field, const FpSet& a, double eps);

/// sigma^x(R) against eps^-4 delta^-1 |R|^{3/4} (E+(f_A)/|A|^3)^{1/2}
///                  + eps^-4 delta^-1 (1 + |R|/|A|).
TheoremReport verify_sigma(const PrimeField& field, const FpSet& a, double eps, RRule rule,
                           const FpSet* explicit_r = nullptr);

/// sum r_{AA+AA}^2 - |A|^8/p against |A|^4 E4(A)^{1/2} + E4(A) |A|^2.
TheoremReport verify_zero_sum(const PrimeField& field, const FpSet& a);

/// |AA+AA| against min{p, |A|^2}; precondition_ok is |A+A|^3 |A| <= p^3 and the
/// doubling constant K = |A+A|/|A| goes to notes.
TheoremReport verify_aa_plus_aa(const PrimeField& field, const FpSet& a);

/// E^x(R) against |R|^{5/2} for R = Spec_eps(A) \ {0}; precondition_ok when
/// |R| >= delta^-1 eps^-2 / 4, i.e. the spectrum is near its maximal size.
TheoremReport verify_example(const PrimeField& field, const FpSet& a, double eps);

struct TightnessReport {
    TheoremReport report;  ///< lhs = E4(coset), rhs = d^5
    bool coset_found = false;
    Elem lambda = 0;
    bool e4_exact = false;     ///< E4(lam H) == d^5
    bool e2_exact = false;     ///< E^x(lam H) == d^3
    double max_nonzero_mag = 0.0;
    double mag_over_sqrt_p = 0.0;
    double balanced_energy = 0.0;
    bool balanced_inequality = false;  ///< E+(f_A) < max|A^(r)|^2 |A|
};

/// Subgroup H of order d: searches a coset inside Spec_eps(H) \ {0}, checks the
/// exact moment values there and the balanced-energy inequality.
TightnessReport tightness_subgroup(const PrimeField& field, std::uint64_t d, double eps);

// ---- incidence rows -----------------------------------------------------

/// Points A'^3 and planes {x + s y + t z = u : s, t, u in A'} with A' the first
/// min(|A|, 6) elements of A.
TheoremReport verify_misha(const PrimeField& field, const FpSet& a);

/// Points A' x (A' + A') and lines y = s x + t, s in the first min(|A'|, 8)
/// elements of A', t in A', with A' the first min(|A|, 40) elements of A.
TheoremReport verify_line_point(const PrimeField& field, const FpSet& a);

// ---- families and sweeps ------------------------------------------------

/// interval | random | subgroup | coset, sized round(p^size_exponent).
FpSet make_family(const PrimeField& field, const std::string& family, std::uint64_t seed,
                  double size_exponent);

/// Largest divisor of p - 1 not exceeding target (at least 1).
std::uint64_t largest_divisor_at_most(std::uint64_t n, std::uint64_t target);

struct SweepConfig {
    std::vector<std::uint64_t> primes{101, 211, 421, 1009, 10007};
    std::vector<std::string> families{"interval", "random", "subgroup", "coset"};
    std::vector<double> eps{0.1, 0.25, 0.5, 0.9};
    std::vector<std::uint64_t> seeds{0, 1};
    std::vector<std::string> theorems{"main", "e4",   "sigma", "zero_sum", "aa_plus_aa",
                                      "example", "misha", "line_point"};
    double size_exponent = 0.7;
    std::string output;
    std::string baseline;
};

const std::vector<std::string>& known_theorems();
const std::vector<std::string>& known_families();

/// Flat "key = value" text; '#' starts a comment. Errors carry line numbers.
SweepConfig parse_sweep_config(std::istream& in);

/// One row per (theorem, prime, family, eps, seed), sorted by
/// (theorem, p, family, seed, eps). Instances run on up to `jobs` threads;
/// the output does not depend on the thread count.
std::vector<TheoremReport> run_sweep(const SweepConfig& config, unsigned jobs = 1);

/// Runs one theorem on one instance (the unit of work in a sweep).
TheoremReport run_theorem(const std::string& theorem, const PrimeField& field, const FpSet& a,
                          const std::string& family, double eps, std::uint64_t seed);

void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& rows);
void write_reports_jsonl(std::ostream& out, const std::vector<TheoremReport>& rows);
std::string format_real(double v);

/// (theorem, family) -> max ratio over rows whose precondition holds.
using RatioTable = std::map<std::pair<std::string, std::string>, double>;
RatioTable max_ratios(const std::vector<TheoremReport>& rows);

void write_baseline(std::ostream& out, const RatioTable& table);
RatioTable read_baseline(std::istream& in);

struct BaselineCheck {
    std::string theorem;
    std::string family;
    double max_ratio = 0.0;
    double baseline = 0.0;
    double allowed = 0.0;
    bool pass = false;
    std::string notes;
};

/// Allowed value for a blessed ratio b: 2b when b > 0, |b| otherwise.
double baseline_allowance(double b);

std::vector<BaselineCheck> check_baseline(const RatioTable& observed, const RatioTable& baseline);

// ---- selftest -----------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Exact identities on a small fixed battery (Parseval, method agreement for
/// E+, dlog transport for E_k, C4 identities, subgroup moments, the
/// weighted-incidence inequality, the balanced-energy inequality).
std::vector<CheckResult> selftest();

}  // namespace fpspec
