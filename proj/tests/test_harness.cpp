#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fpspec/energy.hpp"
#include "fpspec/error.hpp"
#include "fpspec/harness.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace fpspec;
using testing_support::make_set;
using testing_support::to_vec;

TEST_CASE("main inequality rows") {
    const PrimeField f(101);
    const FpSet h = mult_subgroup(f, 25);
    const auto r = verify_main(f, h, 0.5, RRule::FullSpectrum);
    CHECK(r.theorem_id == "main");
    REQUIRE(r.lhs_exact.has_value());
    if (r.r_size > 0) {
        CHECK(*r.lhs_exact == mult_energy_k(f, nonzero_spectrum_set(spectrum(dft(f, h), 0.5), 101), 2).value);
    }
    const auto tiny = verify_main(f, make_set(101, {1, 2, 3}), 0.1, RRule::FullSpectrum);
    CHECK(!tiny.precondition_ok);

    const auto coset = verify_main(f, h, 0.1, RRule::CosetSearch);
    CHECK(coset.r_size == 25);
    CHECK(coset.precondition_ok);
    CHECK(*coset.lhs_exact == static_cast<u128>(25 * 25 * 25));
    CHECK(coset.ratio >= 1e-4);
    CHECK(coset.ratio <= 1e4);

    const auto none = verify_main(f, h, 0.9, RRule::CosetSearch);
    CHECK(none.r_size == 0);
    CHECK(none.lhs == 0.0);
    CHECK(none.ratio == 0.0);
    CHECK(none.notes == "NoCosetFound");
    CHECK(!none.precondition_ok);
}

TEST_CASE("explicit R outside the spectrum fails the precondition") {
    const PrimeField f(101);
    const FpSet a = interval(f, 40);
    const FpSet r = make_set(101, {50});
    const auto rep = verify_main(f, a, 0.5, RRule::Explicit, &r);
    CHECK(!rep.precondition_ok);
    CHECK(rep.rule == "explicit");
}

TEST_CASE("full field gives an empty nonzero spectrum") {
    const PrimeField f(101);
    std::vector<std::int64_t> all(101);
    for (int i = 0; i < 101; ++i) all[i] = i;
    const FpSet a(101, all);
    const auto e4 = verify_e4(f, a, 0.5);
    CHECK(e4.r_size == 0);
    CHECK(e4.lhs == 0.0);
    CHECK(e4.ratio == 0.0);
}

TEST_CASE("sigma rows") {
    const PrimeField f(211);
    const FpSet h = mult_subgroup(f, 42);
    const auto s = verify_sigma(f, h, 0.1, RRule::CosetSearch);
    if (s.r_size > 0) CHECK(*s.lhs_exact == static_cast<u128>(42 * 42));
    const FpSet one = make_set(211, {1});
    const auto t = verify_sigma(f, interval(f, 100), 0.1, RRule::Explicit, &one);
    CHECK(*t.lhs_exact == 1);
}

TEST_CASE("zero-sum rows") {
    const PrimeField f(1009);
    const auto single = verify_zero_sum(f, make_set(1009, {5}));
    CHECK(single.lhs == doctest::Approx(1.0 - 1.0 / 1009.0));
    CHECK(single.rhs == 2.0);
    CHECK(single.ratio < 1.0);

    const FpSet ten = interval(f, 10);
    const auto r = verify_zero_sum(f, ten);
    CHECK(*r.lhs_exact == rep_sq_sum_aa(f, ten));
    const FpSet six = interval(f, 6);
    CHECK(rep_sq_sum_aa(f, six) == oracle::rep_sq_sum_aa(1009, to_vec(six)));

    const PrimeField g(101);
    const FpSet h = mult_subgroup(g, 25);
    const u128 eh = additive_energy(g, h, h, Method::Convolution).value;
    CHECK(*verify_zero_sum(g, h).lhs_exact == static_cast<u128>(25 * 25 * 25 * 25) * eh);
}

TEST_CASE("AA+AA rows") {
    const PrimeField f(101);
    CHECK(verify_aa_plus_aa(f, make_set(101, {3})).lhs == 1.0);
    std::vector<std::int64_t> star(100);
    for (int i = 0; i < 100; ++i) star[i] = i + 1;
    CHECK(verify_aa_plus_aa(f, FpSet(101, star)).lhs == 101.0);

    const PrimeField big(10007);
    const auto r = verify_aa_plus_aa(big, interval(big, 30));
    CHECK(r.precondition_ok);
    CHECK(r.lhs >= 0.1 * 900);
    CHECK(r.notes.find("K=") != std::string::npos);
}

TEST_CASE("tightness at p = 101, d = 25") {
    const PrimeField f(101);
    bool any = false;
    for (double eps : {0.1, 0.25, 0.5, 0.9}) {
        const auto t = tightness_subgroup(f, 25, eps);
        CHECK(t.balanced_inequality);
        if (!t.coset_found) {
            CHECK(t.report.notes.find("NoCosetFound") != std::string::npos);
            continue;
        }
        any = true;
        CHECK(t.e4_exact);
        CHECK(t.e2_exact);
        CHECK(*t.report.lhs_exact == static_cast<u128>(9765625));
    }
    CHECK(any);
}

TEST_CASE("incidence rows") {
    const PrimeField f(101);
    const auto m = verify_misha(f, interval(f, 10));
    CHECK(m.theorem_id == "misha");
    CHECK(std::isfinite(m.ratio));
    const auto lp = verify_line_point(f, interval(f, 10));
    CHECK(lp.theorem_id == "line_point");
    CHECK(std::isfinite(lp.ratio));
}

TEST_CASE("ratio conventions") {
    const PrimeField f(101);
    const auto r = verify_zero_sum(f, interval(f, 16));
    CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs));
    CHECK(r.ratio_log == doctest::Approx(r.ratio / 16.0));
}

TEST_CASE("families") {
    const PrimeField f(101);
    CHECK(make_family(f, "interval", 0, 0.7).size() == 25);
    CHECK(make_family(f, "subgroup", 0, 0.7).size() == 25);
    const FpSet c = make_family(f, "coset", 0, 0.7);
    CHECK(c.size() == 25);
    CHECK(c != make_family(f, "subgroup", 0, 0.7));
    CHECK(make_family(f, "random", 3, 0.7) == make_family(f, "random", 3, 0.7));
    CHECK(largest_divisor_at_most(100, 26) == 25);
    CHECK(largest_divisor_at_most(12, 1) == 1);
    CHECK_THROWS_AS(make_family(f, "bogus", 0, 0.7), Error);
}

TEST_CASE("sweep config parsing") {
    std::istringstream in(
        "# battery\nprimes = 101, 211\nfamilies = interval\neps = 0.5\nseeds = 3\n"
        "theorems = main, zero_sum\noutput = out.csv\nbaseline = base.json\n");
    const auto cfg = parse_sweep_config(in);
    CHECK(cfg.primes == std::vector<std::uint64_t>{101, 211});
    CHECK(cfg.families == std::vector<std::string>{"interval"});
    CHECK(cfg.eps == std::vector<double>{0.5});
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3});
    CHECK(cfg.output == "out.csv");
    CHECK(cfg.baseline == "base.json");

    for (const char* bad : {"primes = 9\n", "colour = red\n", "eps = 0\n", "families = squares\n",
                            "theorems = fermat\n", "no equals sign\n"}) {
        std::istringstream b(bad);
        CAPTURE(bad);
        try {
            parse_sweep_config(b);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Config);
            CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        }
    }
}

TEST_CASE("sweeps are ordered and independent of the thread count") {
    SweepConfig cfg;
    cfg.primes = {101, 211};
    cfg.seeds = {0, 1};
    const auto one = run_sweep(cfg, 1);
    const auto four = run_sweep(cfg, 4);
    CHECK(one.size() == 8 * 2 * 4 * 4 * 2);
    std::ostringstream a;
    std::ostringstream b;
    write_reports_csv(a, one);
    write_reports_csv(b, four);
    CHECK(a.str() == b.str());
    bool sorted = true;
    for (std::size_t i = 1; i < one.size(); ++i) {
        const auto& x = one[i - 1];
        const auto& y = one[i];
        sorted = sorted && std::tie(x.theorem_id, x.p, x.family, x.seed, x.eps) <=
                               std::tie(y.theorem_id, y.p, y.family, y.seed, y.eps);
    }
    CHECK(sorted);
}

TEST_CASE("report serialization") {
    TheoremReport r;
    r.theorem_id = "main";
    r.family = "interval";
    r.rule = "full_spectrum";
    r.p = 101;
    r.eps = 0.1;
    r.set_size = 3;
    r.delta = 3.0 / 101.0;
    r.lhs_exact = static_cast<u128>(19);
    r.lhs = 19;
    r.rhs = 0;
    r.ratio = INFINITY;
    r.ratio_log = INFINITY;
    r.notes = "a, \"quoted\" note";
    std::ostringstream csv;
    write_reports_csv(csv, {r});
    CHECK(csv.str() ==
          "theorem,family,rule,p,seed,eps,set_size,delta,r_size,precondition_ok,lhs_exact,lhs,rhs,ratio,ratio_log,notes\n"
          "main,interval,full_spectrum,101,0,0.1,3,0.029702970297,0,0,19,19,0,inf,inf,\"a, \"\"quoted\"\" note\"\n");
    std::ostringstream jl;
    write_reports_jsonl(jl, {r});
    CHECK(jl.str().find("\"ratio\":null") != std::string::npos);
    CHECK(jl.str().find("\"notes\":\"a, \\\"quoted\\\" note\"") != std::string::npos);
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("baselines") {
    CHECK(baseline_allowance(0.5) == 1.0);
    CHECK(baseline_allowance(0.0) == 0.0);
    CHECK(baseline_allowance(-2.0) == 2.0);

    RatioTable observed{{{"main", "interval"}, 0.9}, {{"e4", "random"}, 3.0}, {{"zero_sum", "coset"}, NAN}};
    RatioTable blessed{{{"main", "interval"}, 0.5}, {{"e4", "random"}, 1.0}, {{"zero_sum", "coset"}, 1.0}};
    const auto checks = check_baseline(observed, blessed);
    REQUIRE(checks.size() == 3);
    int passed = 0;
    for (const auto& c : checks) {
        if (c.theorem == "main") CHECK(c.pass);
        if (c.theorem == "e4") CHECK(!c.pass);
        if (c.theorem == "zero_sum") CHECK(!c.pass);
        passed += c.pass;
    }
    CHECK(passed == 1);

    std::stringstream buf;
    write_baseline(buf, blessed);
    CHECK(read_baseline(buf) == blessed);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_baseline(sink, observed), Error);

    TheoremReport bad;
    bad.theorem_id = "main";
    bad.family = "interval";
    bad.precondition_ok = false;
    bad.ratio = 50.0;
    TheoremReport good = bad;
    good.precondition_ok = true;
    good.ratio = 0.25;
    const auto table = max_ratios({bad, good});
    CHECK(table.at({"main", "interval"}) == 0.25);
}

TEST_CASE("selftest battery passes") {
    for (const auto& c : selftest()) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
}
