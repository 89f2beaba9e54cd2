#include "fpspec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fpspec/energy.hpp"
#include "fpspec/error.hpp"

namespace fpspec {

namespace {

double inv_pow(double x, int k) { return std::pow(x, -static_cast<double>(k)); }

void finish(TheoremReport& r) {
    if (r.rhs > 0.0) {
        r.ratio = r.lhs / r.rhs;
    } else {
        r.ratio = r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double lg = r.set_size > 0 ? std::log2(static_cast<double>(r.set_size)) : 0.0;
    r.ratio_log = r.ratio / std::max(1.0, lg * lg);
}

TheoremReport base_report(const char* id, const PrimeField& field, const FpSet& a, double eps) {
    if (a.empty()) fail(ErrorCode::EmptySet, std::string(id) + ": A is empty");
    TheoremReport r;
    r.theorem_id = id;
    r.p = field.p();
    r.eps = eps;
    r.set_size = a.size();
    r.delta = a.density();
    return r;
}

bool is_subset(const FpSet& inner, const FpSet& outer) {
    return std::all_of(inner.elements().begin(), inner.elements().end(),
                       [&](Elem x) { return outer.contains(x); });
}

// E+(f_A) through the exact integer E+(A).
double balanced_energy_exact(const PrimeField& field, const FpSet& a) {
    const u128 e = additive_energy(field, a, a, Method::Convolution).value;
    const long double n = static_cast<long double>(a.size());
    return static_cast<double>(static_cast<long double>(to_double(e)) - n * n * n * n / field.p());
}

struct ChosenR {
    FpSet set;
    std::string notes;
    bool inside_spectrum = true;
};

ChosenR choose_r(const PrimeField& field, const FpSet& a, const SpectrumResult& spec, RRule rule,
                 const FpSet* explicit_r) {
    const Elem p = field.p();
    switch (rule) {
        case RRule::FullSpectrum:
            return {nonzero_spectrum_set(spec, p), "R = Spec \\ {0}"};
        case RRule::CosetSearch: {
            auto found = find_spectral_coset(field, a, spec);
            if (!found) return {FpSet(p), "NoCosetFound"};
            return {*found, "R = coset lambda=" + std::to_string(found->elements().front())};
        }
        case RRule::Explicit: {
            if (explicit_r == nullptr) fail(ErrorCode::InvalidArgument, "explicit rule needs R");
            if (explicit_r->modulus() != p) fail(ErrorCode::InvalidArgument, "R modulus differs from p");
            const FpSet full = nonzero_spectrum_set(spec, p);
            const bool inside = is_subset(*explicit_r, full);
            return {*explicit_r, inside ? "R explicit" : "R explicit, not inside Spec \\ {0}", inside};
        }
    }
    return {FpSet(p), ""};
}

}  // namespace

const char* rule_name(RRule r) noexcept {
    switch (r) {
        case RRule::FullSpectrum: return "full_spectrum";
        case RRule::CosetSearch: return "coset_search";
        case RRule::Explicit: return "explicit";
    }
    return "?";
}

std::optional<FpSet> find_spectral_coset(const PrimeField& field, const FpSet& a,
                                         const SpectrumResult& spec) {
    if (a.empty() || a.contains(0)) return std::nullopt;
    const Elem p = field.p();
    const FpSet h = dilate(field, a, field.inv(a.elements().front()));
    if (!is_subgroup(field, h)) return std::nullopt;

    std::vector<std::uint8_t> in_spec(p, 0);
    for (Elem r : spec.elements) in_spec[r] = 1;
    std::vector<std::uint8_t> visited(p, 0);
    for (Elem lam = 1; lam < p; ++lam) {
        if (visited[lam] != 0) continue;
        bool inside = true;
        for (Elem x : h.elements()) {
            const Elem y = field.mul(lam, x);
            visited[y] = 1;
            inside = inside && in_spec[y] != 0;
        }
        if (inside) return dilate(field, h, lam);
    }
    return std::nullopt;
}

TheoremReport verify_main(const PrimeField& field, const FpSet& a, double eps, RRule rule,
                          const FpSet* explicit_r) {
    TheoremReport r = base_report("main", field, a, eps);
    r.rule = rule_name(rule);
    const auto spec = spectrum(dft(field, a), eps);
    const ChosenR chosen = choose_r(field, a, spec, rule, explicit_r);
    const FpSet& set_r = chosen.set;
    r.r_size = set_r.size();
    r.notes = chosen.notes;

    const u128 e2 = set_r.empty() ? 0 : mult_energy_k(field, set_r, 2).value;
    r.lhs_exact = e2;
    r.lhs = to_double(e2);
    r.rhs = inv_pow(eps, 4) / r.delta * std::pow(static_cast<double>(r.r_size), 1.5);
    const double n = static_cast<double>(a.size());
    r.precondition_ok = static_cast<double>(field.p()) <= eps * eps * n * n * n &&
                        chosen.inside_spectrum && !set_r.empty();
    finish(r);
    return r;
}

TheoremReport verify_e4(const PrimeField& field, const FpSet& a, double eps) {
    TheoremReport r = base_report("e4", field, a, eps);
    r.rule = rule_name(RRule::FullSpectrum);
    const auto spec = spectrum(dft(field, a), eps);
    const FpSet set_r = nonzero_spectrum_set(spec, field.p());
    r.r_size = set_r.size();

    const u128 e4 = set_r.empty() ? 0 : mult_energy_k(field, set_r, 4).value;
    r.lhs_exact = e4;
    r.lhs = to_double(e4);
    const double n = static_cast<double>(a.size());
    const double bal = balanced_energy_exact(field, a);
    const double normalized = bal / (n * n * n);
    r.rhs = inv_pow(eps, 16) * inv_pow(r.delta, 4) * normalized * normalized;
    r.precondition_ok = true;
    r.notes = "E+(f_A)=" + format_real(bal);
    finish(r);
    return r;
}

TheoremReport verify_sigma(const PrimeField& field, const FpSet& a, double eps, RRule rule,
                           const FpSet* explicit_r) {
    TheoremReport r = base_report("sigma", field, a, eps);
    r.rule = rule_name(rule);
    const auto spec = spectrum(dft(field, a), eps);
    const ChosenR chosen = choose_r(field, a, spec, rule, explicit_r);
    const FpSet& set_r = chosen.set;
    r.r_size = set_r.size();
    // sigma^x is read as the multiplicative analogue of sigma^+(A) = sum_{x in A} r_{A-A}(x).
    r.notes = chosen.notes + "; sigma^x(R) = sum_{lam in R} r_{R/R}(lam)";

    const u128 s = set_r.empty() ? 0 : sigma_mult(field, set_r).value;
    r.lhs_exact = s;
    r.lhs = to_double(s);
    const double n = static_cast<double>(a.size());
    const double bal = balanced_energy_exact(field, a);
    const double lead = inv_pow(eps, 4) / r.delta;
    const double rs = static_cast<double>(r.r_size);
    r.rhs = lead * std::pow(rs, 0.75) * std::sqrt(std::max(0.0, bal) / (n * n * n)) +
            lead * (1.0 + rs / n);
    r.precondition_ok = static_cast<double>(field.p()) <= eps * eps * n * n * n &&
                        chosen.inside_spectrum && !set_r.empty();
    finish(r);
    return r;
}

TheoremReport verify_zero_sum(const PrimeField& field, const FpSet& a) {
    require_no_zero(a, "A");
    TheoremReport r = base_report("zero_sum", field, a, 0.0);
    const u128 sq = rep_sq_sum_aa(field, a);
    const u128 e4 = mult_energy_k(field, a, 4).value;
    const long double n = static_cast<long double>(a.size());
    const long double n4 = n * n * n * n;
    r.lhs_exact = sq;
    r.lhs = static_cast<double>(static_cast<long double>(to_double(sq)) - n4 * n4 / field.p());
    const double e4d = to_double(e4);
    r.rhs = static_cast<double>(n4) * std::sqrt(e4d) + e4d * static_cast<double>(n * n);
    r.precondition_ok = true;
    r.notes = "E4(A)=" + to_string(e4);
    finish(r);
    return r;
}

TheoremReport verify_aa_plus_aa(const PrimeField& field, const FpSet& a) {
    require_no_zero(a, "A");
    TheoremReport r = base_report("aa_plus_aa", field, a, 0.0);
    const FpSet aa = product_set(field, a, a);
    const FpSet aa_plus_aa = sumset(field, aa, aa);
    const FpSet a_plus_a = sumset(field, a, a);
    const u128 n = a.size();
    const u128 s = a_plus_a.size();
    const u128 p = field.p();
    r.precondition_ok = s * s * s * n <= p * p * p;
    r.lhs_exact = aa_plus_aa.size();
    r.lhs = static_cast<double>(aa_plus_aa.size());
    r.rhs = std::min(static_cast<double>(field.p()), to_double(n * n));
    r.notes = "K=" + format_real(static_cast<double>(a_plus_a.size()) /
                                 static_cast<double>(a.size())) +
              " |AA|=" + std::to_string(aa.size());
    finish(r);
    return r;
}

TheoremReport verify_example(const PrimeField& field, const FpSet& a, double eps) {
    TheoremReport r = base_report("example", field, a, eps);
    r.rule = rule_name(RRule::FullSpectrum);
    const auto spec = spectrum(dft(field, a), eps);
    const FpSet set_r = nonzero_spectrum_set(spec, field.p());
    r.r_size = set_r.size();
    const u128 e2 = set_r.empty() ? 0 : mult_energy_k(field, set_r, 2).value;
    r.lhs_exact = e2;
    r.lhs = to_double(e2);
    const double rs = static_cast<double>(r.r_size);
    r.rhs = std::pow(rs, 2.5);
    const double near_max = 1.0 / (r.delta * eps * eps) / 4.0;
    r.precondition_ok = r.r_size > 0 && rs >= near_max;
    r.notes = "|R| threshold " + format_real(near_max);
    finish(r);
    return r;
}

TightnessReport tightness_subgroup(const PrimeField& field, std::uint64_t d, double eps) {
    const FpSet h = mult_subgroup(field, d);
    TightnessReport t;
    t.report = base_report("tightness", field, h, eps);
    t.report.family = "subgroup";
    t.report.rule = rule_name(RRule::CosetSearch);

    const auto table = dft(field, h);
    const auto spec = spectrum(table, eps);
    t.max_nonzero_mag = max_nonzero_magnitude(table);
    t.mag_over_sqrt_p = t.max_nonzero_mag / std::sqrt(static_cast<double>(field.p()));
    t.balanced_energy = balanced_energy_exact(field, h);
    t.balanced_inequality = t.balanced_energy <
                          t.max_nonzero_mag * t.max_nonzero_mag * static_cast<double>(h.size());

    const auto found = find_spectral_coset(field, h, spec);
    const u128 dd = d;
    t.report.rhs = to_double(ipow(dd, 5));
    if (found) {
        t.coset_found = true;
        t.lambda = found->elements().front();
        t.report.r_size = found->size();
        const u128 e4 = mult_energy_k(field, *found, 4).value;
        const u128 e2 = mult_energy_k(field, *found, 2).value;
        t.e4_exact = e4 == ipow(dd, 5);
        t.e2_exact = e2 == ipow(dd, 3);
        t.report.lhs_exact = e4;
        t.report.lhs = to_double(e4);
        t.report.notes = "lambda=" + std::to_string(t.lambda);
    } else {
        t.report.notes = "NoCosetFound";
    }
    t.report.precondition_ok = t.coset_found;
    t.report.notes += " max|A^(r)|/sqrt(p)=" + format_real(t.mag_over_sqrt_p);
    finish(t.report);
    return t;
}

TheoremReport verify_misha(const PrimeField& field, const FpSet& a) {
    const std::size_t m = std::min<std::size_t>(a.size(), 6);
    const auto base = a.elements().subspan(0, m);
    IncidenceScene scene(field.p(), 3);
    for (Elem x : base) {
        for (Elem y : base) {
            for (Elem z : base) scene.add_point({x, y, z});
        }
    }
    for (Elem s : base) {
        for (Elem t : base) {
            for (Elem u : base) scene.add_surface({1, s, t}, u);
        }
    }
    const MishaReport mr = misha_ratio(scene, false);

    TheoremReport r;
    r.theorem_id = "misha";
    r.p = field.p();
    r.set_size = m;
    r.delta = static_cast<double>(m) / field.p();
    r.precondition_ok = scene.points().size() <= scene.surfaces().size();
    r.lhs_exact = mr.incidences;
    r.lhs = mr.excess;
    r.rhs = mr.bound;
    r.notes = "I=" + std::to_string(mr.incidences) + " k=" + std::to_string(mr.k);
    finish(r);
    return r;
}

TheoremReport verify_line_point(const PrimeField& field, const FpSet& a) {
    const std::size_t m = std::min<std::size_t>(a.size(), 40);
    std::vector<std::int64_t> head(a.elements().begin(), a.elements().begin() + static_cast<std::ptrdiff_t>(m));
    const FpSet a_head(field.p(), head);
    const FpSet b = sumset(field, a_head, a_head);
    std::vector<Line2> lines;
    const std::size_t slopes = std::min<std::size_t>(m, 8);
    for (std::size_t i = 0; i < slopes; ++i) {
        for (Elem t : a_head.elements()) {
            lines.push_back({a_head.elements()[i], field.p() - 1, field.neg(t)});
        }
    }
    const LinePointReport lr = line_point_ratio(field, a_head, b, lines);

    TheoremReport r;
    r.theorem_id = "line_point";
    r.p = field.p();
    r.set_size = m;
    r.delta = static_cast<double>(m) / field.p();
    r.precondition_ok = a_head.size() <= b.size();
    r.lhs_exact = lr.incidences;
    r.lhs = lr.excess;
    r.rhs = lr.bound;
    r.notes = "I=" + std::to_string(lr.incidences) + " |B|=" + std::to_string(b.size()) +
              " |L|=" + std::to_string(normalize_lines(field, lines).size());
    finish(r);
    return r;
}

}  // namespace fpspec
