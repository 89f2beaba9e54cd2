#include "doctest.h"

#include <sstream>
#include <vector>

#include "fpspec/energy.hpp"
#include "fpspec/error.hpp"
#include "fpspec/fourier.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace fpspec;
using testing_support::make_set;
using testing_support::to_vec;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("additive representation function") {
    const PrimeField f(101);
    const FpSet a = make_set(101, {1, 2, 3});
    for (Method m : {Method::Brute, Method::Convolution}) {
        const auto r = rep_add(f, a, a, AddSign::Plus, m);
        CHECK(std::vector<std::uint64_t>(r.counts.begin() + 2, r.counts.begin() + 7) ==
              std::vector<std::uint64_t>{1, 2, 3, 2, 1});
        CHECK(r.total == 9);
        const auto d = rep_add(f, a, a, AddSign::Minus, m);
        CHECK(d.counts[0] == 3);
        CHECK(d.total == 9);
    }
}

TEST_CASE("additive energy examples") {
    const PrimeField f(101);
    const FpSet a = make_set(101, {1, 2, 3});
    for (Method m : {Method::Brute, Method::Convolution, Method::Fourier}) {
        CHECK(additive_energy(f, a, a, m).value == 19);
        CHECK(additive_energy(f, make_set(101, {9}), make_set(101, {9}), m).value == 1);
    }
    const PrimeField g(211);
    const FpSet x = random_set(g, 20, 7, false);
    const FpSet y = random_set(g, 20, 8, false);
    const u128 brute = additive_energy(g, x, y, Method::Brute).value;
    CHECK(brute == oracle::additive_energy_quadruples(211, to_vec(x), to_vec(y)));
    CHECK(additive_energy(g, x, y, Method::Convolution).value == brute);
    CHECK(additive_energy(g, x, y, Method::Fourier).value == brute);
}

TEST_CASE("property: E+ methods agree with quadruple enumeration") {
    for (std::uint64_t p : {101ULL, 211ULL, 421ULL}) {
        const PrimeField f(p);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            CAPTURE(p);
            CAPTURE(seed);
            const FpSet a = random_set(f, 1 + (seed * 13) % 40, seed, false);
            const FpSet b = random_set(f, 1 + (seed * 7) % 30, seed + 99, false);
            const u128 want = oracle::additive_energy_quadruples(p, to_vec(a), to_vec(b));
            CHECK(additive_energy(f, a, b, Method::Brute).value == want);
            CHECK(additive_energy(f, a, b, Method::Convolution).value == want);
            CHECK(additive_energy(f, a, b, Method::Fourier).value == want);
            const auto rep = rep_add(f, a, b, AddSign::Plus);
            CHECK(rep.counts == oracle::rep_sum(p, to_vec(a), to_vec(b)));
            CHECK(rep.total == static_cast<u128>(a.size() * b.size()));
        }
    }
}

TEST_CASE("balanced energy") {
    const PrimeField f(7);
    const auto e = balanced_additive_energy(f, make_set(7, {1, 2, 4}));
    CHECK(e.fourier == doctest::Approx(24.0 / 7.0).epsilon(1e-12));
    CHECK(e.identity == doctest::Approx(24.0 / 7.0).epsilon(1e-12));
    const auto full = balanced_additive_energy(f, make_set(7, {0, 1, 2, 3, 4, 5, 6}));
    CHECK(std::abs(full.fourier) < 1e-9);
    CHECK(std::abs(full.identity) < 1e-9);
}

TEST_CASE("property: balanced energy identity") {
    for (std::uint64_t p : {101ULL, 1009ULL}) {
        const PrimeField f(p);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const FpSet a = random_set(f, 10 + seed * 15, seed, false);
            const auto e = balanced_additive_energy(f, a);
            CHECK(e.fourier == doctest::Approx(e.identity).epsilon(1e-9));
        }
    }
}

TEST_CASE("multiplicative energy moments") {
    const PrimeField f(211);
    for (std::uint64_t t : {1ULL, 2ULL, 3ULL, 5ULL, 14ULL, 35ULL, 210ULL}) {
        const FpSet h = mult_subgroup(f, t);
        const u128 tt = t;
        CHECK(mult_energy_k(f, h, 2).value == tt * tt * tt);
        CHECK(mult_energy_k(f, h, 4).value == tt * tt * tt * tt * tt);
        CHECK(sigma_mult(f, h).value == tt * tt);
    }
    const FpSet one = make_set(211, {1});
    for (unsigned k = 1; k <= 4; ++k) CHECK(mult_energy_k(f, one, k).value == 1);
    CHECK(sigma_mult(f, one).value == 1);

    const FpSet r = random_set(f, 15, 3, true);
    CHECK(mult_energy_k(f, r, 2).value == oracle::mult_quadruples(211, to_vec(r)));
    CHECK(sigma_mult(f, r).value == oracle::sigma_triples(211, to_vec(r)));
    CHECK(code_of([&] { mult_energy_k(f, make_set(211, {0, 1}), 2); }) == ErrorCode::ZeroInSet);
    CHECK(code_of([&] { mult_energy_k(f, r, 5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: dlog transport matches inverse-based ratio counts") {
    for (std::uint64_t p : {101ULL, 211ULL, 421ULL}) {
        const PrimeField f(p);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const FpSet r = random_set(f, 2 + seed * 6, seed + 17, true);
            const auto rv = to_vec(r);
            for (unsigned k = 1; k <= 4; ++k) {
                CAPTURE(p);
                CAPTURE(seed);
                CAPTURE(k);
                CHECK(mult_energy_k(f, r, k).value == oracle::ratio_moment(p, rv, k));
                CHECK(mult_energy_k_brute(f, r, k).value == oracle::ratio_moment(p, rv, k));
            }
            CHECK(sigma_mult(f, r).value == oracle::sigma_triples(p, rv));
        }
    }
}

TEST_CASE("multiplicative representation on exponents") {
    const PrimeField f(101);
    const FpSet a = random_set(f, 12, 4, true);
    const FpSet b = random_set(f, 9, 5, true);
    const auto prod = rep_mul(f, a, b, MulOp::Product);
    const auto ratio = rep_mul(f, a, b, MulOp::Ratio);
    REQUIRE(prod.counts.size() == 100);
    bool ok = true;
    for (std::uint32_t e = 0; e < 100; ++e) {
        const Elem x = f.pow(e);
        std::uint64_t np = 0;
        std::uint64_t nr = 0;
        for (auto u : to_vec(a)) {
            for (auto v : to_vec(b)) {
                np += u * v % 101 == x;
                nr += u * oracle::inverse(v, 101) % 101 == x;
            }
        }
        ok = ok && prod.counts[e] == np && ratio.counts[e] == nr;
    }
    CHECK(ok);
    CHECK(code_of([&] { rep_mul(f, make_set(101, {0, 3}), b, MulOp::Product); }) == ErrorCode::ZeroInSet);
    CHECK(code_of([&] { rep_mul(f, a, make_set(101, {0, 3}), MulOp::Ratio); }) == ErrorCode::ZeroInSet);
}

TEST_CASE("C4 aggregates") {
    const PrimeField f(101);
    const FpSet a = random_set(f, 10, 1, true);
    const auto c = c4_aggregates(f, a);
    CHECK(c.sum == static_cast<u128>(10000));
    CHECK(c.sum_sq == mult_energy_k(f, a, 4).value);
    const FpSet h = mult_subgroup(f, 5);
    CHECK(c4_aggregates(f, h).sum_sq == static_cast<u128>(3125));

    // Direct triple sweep over (alpha, beta, gamma) on a small field.
    const PrimeField g(13);
    const FpSet s = make_set(13, {1, 3, 4, 7});
    const auto want = oracle::c4_direct(13, to_vec(s));
    const auto got = c4_aggregates(g, s);
    CHECK(got.sum == want.first);
    CHECK(got.sum_sq == want.second);
    CHECK(code_of([&] { c4_aggregates(g, make_set(13, {0, 1})); }) == ErrorCode::ZeroInSet);
}

TEST_CASE("brute-force guards") {
    const PrimeField f(10007);
    const FpSet big = random_set(f, 5000, 1, true);
    CHECK(code_of([&] { rep_add(f, big, big, AddSign::Plus, Method::Brute); }) == ErrorCode::TooLargeForBrute);
    CHECK(code_of([&] { additive_energy(f, big, big, Method::Brute); }) == ErrorCode::TooLargeForBrute);
    CHECK(code_of([&] { c4_aggregates(f, random_set(f, 41, 1, true)); }) == ErrorCode::TooLargeForBrute);
    CHECK(code_of([&] { mult_energy_k_brute(f, big, 2); }) == ErrorCode::TooLargeForBrute);
}

TEST_CASE("property: Fourier-side inequality of the energy bound") {
    for (std::uint64_t p : {101ULL, 211ULL}) {
        const PrimeField f(p);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const FpSet a = random_set(f, 20 + seed * 5, seed, false);
            for (double eps : {0.1, 0.25}) {
                const auto spec = spectrum(dft(f, a), eps);
                const FpSet r = nonzero_spectrum_set(spec, static_cast<Elem>(p));
                if (r.empty()) continue;
                const auto chk = fourier_side_bound(f, a, r, eps);
                CAPTURE(p);
                CAPTURE(seed);
                CAPTURE(eps);
                CHECK(chk.lhs <= chk.rhs_enumerated * (1 + 1e-9));
                CHECK(chk.rhs_fourier == doctest::Approx(chk.rhs_enumerated).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("representation CSV") {
    const PrimeField f(5);
    std::ostringstream out;
    write_rep_csv(out, rep_add(f, make_set(5, {1}), make_set(5, {1}), AddSign::Plus));
    CHECK(out.str() == "index,count\n0,0\n1,0\n2,1\n3,0\n4,0\n");
}
