#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fpspec/energy.hpp"
#include "fpspec/error.hpp"
#include "fpspec/harness.hpp"

namespace fpspec {

namespace {

class Battery {
public:
    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        auto it = std::find_if(results_.begin(), results_.end(),
                               [&](const CheckResult& c) { return c.name == name; });
        if (it == results_.end()) {
            results_.push_back({name, true, {}});
            it = results_.end() - 1;
        }
        ++counts_[name];
        if (!ok && it->pass) {
            it->pass = false;
            it->detail = detail;
        }
    }

    std::vector<CheckResult> finish() {
        for (auto& r : results_) {
            if (r.pass) r.detail = std::to_string(counts_[r.name]) + " cases";
        }
        return results_;
    }

private:
    std::vector<CheckResult> results_;
    std::map<std::string, std::size_t> counts_;
};

}  // namespace

std::vector<CheckResult> selftest() {
    Battery b;
    const std::vector<std::uint64_t> primes{101, 211, 421};

    for (std::uint64_t p : primes) {
        const PrimeField field(p);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const std::uint64_t size = 5 + (seed * 7) % 30;
            const FpSet a = random_set(field, size, seed, false);
            const auto table = dft(field, a);
            double sum = 0.0;
            for (double m : table.mag2()) sum += m;
            const double expect = static_cast<double>(p) * static_cast<double>(a.size());
            b.check("parseval", std::abs(sum - expect) <= 1e-9 * expect,
                    "p=" + std::to_string(p) + " seed=" + std::to_string(seed));

            const auto fast = dft_fast(field, a);
            const auto direct = dft_direct(field, a);
            double err = 0.0;
            for (Elem xi = 0; xi < p; ++xi) err = std::max(err, std::abs(fast.values()[xi] - direct.values()[xi]));
            b.check("dft_fast_vs_direct", err < 1e-6, "max error " + format_real(err));

            const auto spec = spectrum(table, 0.3);
            const bool has_zero = !spec.elements.empty() && spec.elements.front() == 0;
            bool symmetric = true;
            for (Elem r : spec.elements) {
                symmetric = symmetric && std::binary_search(spec.elements.begin(), spec.elements.end(),
                                                            field.neg(r));
            }
            const double bound = static_cast<double>(p) / (static_cast<double>(a.size()) * 0.09);
            b.check("spectrum_shape", has_zero && symmetric &&
                                          static_cast<double>(spec.elements.size()) <= bound);

            const FpSet other = random_set(field, 3 + seed % 9, seed + 100, false);
            const auto e_brute = additive_energy(field, a, other, Method::Brute).value;
            const auto e_conv = additive_energy(field, a, other, Method::Convolution).value;
            const auto e_four = additive_energy(field, a, other, Method::Fourier).value;
            b.check("additive_energy_methods", e_brute == e_conv && e_conv == e_four,
                    to_string(e_brute) + " / " + to_string(e_conv) + " / " + to_string(e_four));

            const FpSet r = random_set(field, 4 + seed * 5, seed + 7, true);
            for (unsigned k = 1; k <= 4; ++k) {
                b.check("mult_energy_dlog_transport",
                        mult_energy_k(field, r, k).value == mult_energy_k_brute(field, r, k).value,
                        "k=" + std::to_string(k));
            }

            const FpSet small = random_set(field, 3 + seed % 8, seed + 11, true);
            const auto c4 = c4_aggregates(field, small);
            const u128 n = small.size();
            b.check("c4_identities",
                    c4.sum == n * n * n * n && c4.sum_sq == mult_energy_k(field, small, 4).value);

            const FpSet tiny = random_set(field, 2 + seed % 5, seed + 13, true);
            b.check("rep_sq_sum_aa_oracle",
                    rep_sq_sum_aa(field, tiny) == rep_sq_sum_aa_brute(field, tiny));

            const double bal = balanced_additive_energy(field, a).identity;
            const double m = max_nonzero_magnitude(table);
            b.check("balanced_energy_below_peak", bal < m * m * static_cast<double>(a.size()));
        }

        for (std::uint64_t d = 1; d <= p - 1; ++d) {
            if ((p - 1) % d != 0) continue;
            const FpSet h = mult_subgroup(field, d);
            const u128 dd = d;
            b.check("subgroup_moments",
                    mult_energy_k(field, h, 2).value == dd * dd * dd &&
                        mult_energy_k(field, h, 4).value == dd * dd * dd * dd * dd &&
                        sigma_mult(field, h).value == dd * dd,
                    "p=" + std::to_string(p) + " d=" + std::to_string(d));
        }
    }

    for (std::uint64_t q : {5ULL, 7ULL}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            IncidenceScene scene = random_scene(q, 3, 10 + seed * 3, 8 + seed * 2, seed);
            randomize_weights(scene, seed + 1000, seed % 2 == 0);
            const auto v = check_point_plane(scene);
            b.check("weighted_incidence_bound", v.pass,
                    "q=" + std::to_string(q) + " lhs=" + format_real(v.lhs) + " rhs=" + format_real(v.rhs));

            std::vector<Point3> pts;
            for (const auto& pt : scene.points()) pts.push_back(pt.coords);
            b.check("collinear_hash_vs_cubic",
                    collinear_max(pts, scene.field()) == collinear_max_cubic(pts, scene.field()));
        }
    }
    return b.finish();
}

}  // namespace fpspec
