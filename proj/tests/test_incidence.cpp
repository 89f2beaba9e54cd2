#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fpspec/error.hpp"
#include "fpspec/incidence.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace fpspec;
using testing_support::make_set;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

std::vector<oracle::Pt> as_oracle(const std::vector<Point3>& pts) {
    std::vector<oracle::Pt> out;
    for (const auto& p : pts) out.push_back({p[0], p[1], p[2]});
    return out;
}

}  // namespace

TEST_CASE("plane incidence examples") {
    IncidenceScene full(3, 3);
    for (Elem x = 0; x < 3; ++x) {
        for (Elem y = 0; y < 3; ++y) {
            for (Elem z = 0; z < 3; ++z) full.add_point({x, y, z});
        }
    }
    full.add_surface({0, 0, 1}, 0);
    CHECK(incidence_count(full) == 9);
    CHECK(incidences(full) == 9.0);

    IncidenceScene empty(5, 3);
    empty.add_surface({1, 2, 3}, 4);
    CHECK(incidence_count(empty) == 0);

    IncidenceScene plane(7, 3);
    for (Elem x = 0; x < 7; ++x) {
        for (Elem y = 0; y < 7; ++y) plane.add_point({x, y, (7 * 7 - x - y) % 7});
    }
    plane.add_surface({1, 1, 1}, 0);
    CHECK(incidence_count(plane) == 49);
}

TEST_CASE("scene normalization rejects repeats") {
    IncidenceScene s(5, 3);
    s.add_point({1, 2, 3});
    CHECK(code_of([&] { s.add_point({1, 2, 3}); }) == ErrorCode::DuplicateElement);
    s.add_surface({2, 4, 1}, 3);
    CHECK(code_of([&] { s.add_surface({1, 2, 3}, 4); }) == ErrorCode::DuplicateElement);  // 3x the first
    CHECK(code_of([&] { s.add_surface({0, 0, 0}, 1); }) == ErrorCode::InvalidArgument);
    CHECK(s.surfaces().front().normal[0] == 1);
}

TEST_CASE("weighted incidence bound") {
    IncidenceScene zero(7, 3);
    zero.add_point({1, 1, 1}, 0.0);
    zero.add_surface({1, 0, 0}, 1, 2.0);
    const auto v = check_point_plane(zero);
    CHECK(v.lhs == 0.0);
    CHECK(v.pass);

    IncidenceScene not_centered(7, 3);
    not_centered.add_point({1, 1, 1}, 1.0);
    not_centered.add_surface({1, 0, 0}, 1, 1.0);
    CHECK(code_of([&] { check_point_plane(not_centered); }) == ErrorCode::MeanZeroViolated);
}

TEST_CASE("property: weighted incidence bound on random mean-zero scenes") {
    for (std::uint64_t q : {5ULL, 7ULL, 11ULL}) {
        int failures = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            IncidenceScene s = random_scene(q, 3, 5 + seed % 40, 5 + (seed * 7) % 40, seed);
            randomize_weights(s, seed + 1, seed % 2 == 0);
            failures += check_point_plane(s).pass ? 0 : 1;
        }
        CAPTURE(q);
        CHECK(failures == 0);
    }
    // point-line version in the plane
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        IncidenceScene s = random_scene(7, 2, 20, 15, seed);
        randomize_weights(s, seed, true);
        CHECK(check_point_plane(s).pass);
    }
}

TEST_CASE("collinear examples") {
    const PrimeField f(7);
    std::vector<Point3> line;
    for (Elem t = 0; t < 7; ++t) line.push_back({t, (2 * t + 1) % 7, (3 * t) % 7});
    CHECK(collinear_max(line, f) == 7);
    CHECK(collinear_max({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, f) == 2);
    CHECK(collinear_max({}, f) == 0);
}

TEST_CASE("property: collinear hashing matches the triple oracle") {
    for (std::uint64_t q : {5ULL, 7ULL, 11ULL}) {
        const PrimeField f(q);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            std::mt19937_64 rng(seed);
            std::vector<Point3> pts;
            // grid A x B x {0} with random A, B of size 4
            std::vector<Elem> a;
            std::vector<Elem> b;
            while (a.size() < 4) {
                Elem x = static_cast<Elem>(rng() % q);
                if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
            }
            while (b.size() < 4) {
                Elem x = static_cast<Elem>(rng() % q);
                if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
            }
            for (Elem x : a) {
                for (Elem y : b) pts.push_back({x, y, 0});
            }
            CHECK(collinear_max(pts, f) == oracle::collinear_cubic(q, as_oracle(pts)));

            const IncidenceScene s = random_scene(q, 3, 10 + seed * 5, 1, seed);
            std::vector<Point3> rp;
            for (const auto& p : s.points()) rp.push_back(p.coords);
            CHECK(collinear_max(rp, f) == oracle::collinear_cubic(q, as_oracle(rp)));
            CHECK(collinear_max_cubic(rp, f) == oracle::collinear_cubic(q, as_oracle(rp)));
        }
    }
}

TEST_CASE("point-plane ratio") {
    IncidenceScene s(5, 3);
    for (Elem x = 0; x < 5; ++x) {
        for (Elem y = 0; y < 5; ++y) s.add_point({x, y, 0});
    }
    s.add_surface({0, 0, 1}, 0);
    CHECK(code_of([&] { misha_ratio(s); }) == ErrorCode::Precondition);
    const auto swapped = misha_ratio(s, true);
    CHECK(swapped.swapped);
    CHECK(swapped.incidences == 25);
    CHECK(std::isfinite(swapped.ratio));

    const IncidenceScene r = random_scene(7, 3, 20, 40, 3);
    const auto m = misha_ratio(r);
    CHECK(m.incidences == incidence_count(r));
    CHECK(m.excess == doctest::Approx(static_cast<double>(m.incidences) - 20.0 * 40.0 / 7.0));
    CHECK(m.bound == doctest::Approx(std::sqrt(20.0) * 40.0 + static_cast<double>(m.k) * 20.0));
}

TEST_CASE("pencils of planes") {
    IncidenceScene s(5, 3);
    s.add_point({0, 0, 0});
    // planes through the line x = y = 0
    for (Elem t = 0; t < 5; ++t) s.add_surface({1, t, 0}, 0);
    s.add_surface({0, 1, 0}, 0);
    // parallel class: z = c
    for (Elem c = 0; c < 3; ++c) s.add_surface({0, 0, 1}, c);
    CHECK(pencil_max(s) == 6);
}

TEST_CASE("point-line ratio") {
    const PrimeField f(101);
    const FpSet a = make_set(101, {1, 2, 3, 4, 5});
    const auto r = line_point_ratio(f, a, a, {{100, 1, 0}});  // -x + y = 0
    CHECK(r.incidences == 5);
    CHECK(r.excess == doctest::Approx(5.0 - 25.0 / 101.0));
    const auto empty = line_point_ratio(f, a, a, {});
    CHECK(empty.excess == 0.0);
    CHECK(code_of([&] { line_point_ratio(f, make_set(101, {1, 2, 3}), make_set(101, {1}), {}); }) ==
          ErrorCode::SizeOrder);
    CHECK(normalize_lines(f, {{2, 2, 4}, {1, 1, 2}, {0, 3, 1}}).size() == 2);
    CHECK(code_of([&] { normalize_lines(f, {{0, 0, 1}}); }) == ErrorCode::InvalidArgument);
    // vertical line x = 2
    CHECK(line_point_ratio(f, a, a, {{1, 0, 2}}).incidences == 5);
}

TEST_CASE("scene files round-trip") {
    IncidenceScene s = random_scene(7, 3, 6, 4, 9);
    randomize_weights(s, 1, true);
    std::stringstream buf;
    write_scene(buf, s);
    const IncidenceScene back = read_scene(buf);
    CHECK(back.q() == 7);
    CHECK(back.points().size() == 6);
    CHECK(back.surfaces().size() == 4);
    CHECK(incidences(back) == incidences(s));
    for (std::size_t i = 0; i < 6; ++i) CHECK(back.points()[i].weight == s.points()[i].weight);

    std::istringstream two("q=5 dim=2\nP 1 2 1\nS 1 1 3 1\n");
    const IncidenceScene plane = read_scene(two);
    CHECK(incidence_count(plane) == 1);
    std::istringstream bad("q=5 dim=3\nP 1 2 1\n");
    CHECK(code_of([&] { read_scene(bad); }) != ErrorCode::InvalidArgument);
}
