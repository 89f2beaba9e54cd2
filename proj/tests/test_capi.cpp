#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "fpspec/fpspec.h"

namespace {

std::string wide(fps_u128 v) {
    char buf[48];
    REQUIRE(fps_u128_format(v, buf, sizeof buf) == FPS_OK);
    return buf;
}

std::string tmp_path(const char* name) {
    return std::string("capi_") + name;
}

}  // namespace

TEST_CASE("field handles and error codes") {
    fps_field f = nullptr;
    REQUIRE(fps_field_create(7, &f) == FPS_OK);
    CHECK(fps_field_modulus(f) == 7);
    CHECK(fps_field_generator(f) == 3);
    std::uint32_t e = 0;
    CHECK(fps_field_dlog(f, 6, &e) == FPS_OK);
    CHECK(e == 3);
    CHECK(fps_field_dlog(f, 0, &e) == FPS_ERR_ZERO_ELEMENT);
    CHECK(std::strlen(fps_last_error()) > 0);
    CHECK(std::string(fps_status_name(FPS_ERR_ZERO_ELEMENT)) == "ZeroElement");
    fps_field_destroy(f);

    fps_field g = nullptr;
    CHECK(fps_field_create(9, &g) == FPS_ERR_NOT_PRIME);
    CHECK(g == nullptr);
    CHECK(fps_field_create(2, &g) == FPS_ERR_EVEN_PRIME);
    CHECK(fps_field_create(7, nullptr) == FPS_ERR_NULL_POINTER);
    CHECK(fps_set_size(nullptr) == 0);
}

TEST_CASE("sets, spectra and energies through the C interface") {
    fps_field f = nullptr;
    REQUIRE(fps_field_create(7, &f) == FPS_OK);
    fps_set a = nullptr;
    REQUIRE(fps_set_parse_list(f, "1,2,4", &a) == FPS_OK);
    CHECK(fps_set_size(a) == 3);

    fps_table t = nullptr;
    REQUIRE(fps_table_create(f, a, FPS_METHOD_FOURIER, &t) == FPS_OK);
    size_t count = 0;
    CHECK(fps_spectrum(t, 0.4, nullptr, nullptr, 0, &count) == FPS_OK);
    CHECK(count == 7);
    std::vector<std::uint32_t> el(2);
    CHECK(fps_spectrum(t, 0.4, el.data(), nullptr, el.size(), &count) == FPS_ERR_BUFFER_TOO_SMALL);
    CHECK(fps_spectrum(t, 0.0, nullptr, nullptr, 0, &count) == FPS_ERR_BAD_EPSILON);
    double re = 0, im = 0, mag2 = 0;
    CHECK(fps_table_value(t, 3, &re, &im, &mag2) == FPS_OK);
    CHECK(mag2 == doctest::Approx(2.0));
    CHECK(fps_table_value(t, 7, &re, &im, &mag2) == FPS_ERR_OUT_OF_RANGE);
    fps_table_destroy(t);

    double fourier = 0, identity = 0;
    CHECK(fps_balanced_energy(f, a, &fourier, &identity) == FPS_OK);
    CHECK(fourier == doctest::Approx(24.0 / 7.0));

    fps_set h = nullptr;
    REQUIRE(fps_set_subgroup(f, 3, &h) == FPS_OK);
    fps_set c = nullptr;
    REQUIRE(fps_set_coset(f, h, 3, &c) == FPS_OK);
    std::uint32_t buf[3];
    CHECK(fps_set_elements(c, buf, 3) == 3);
    CHECK(buf[0] == 3);
    CHECK(buf[1] == 5);
    CHECK(buf[2] == 6);
    CHECK(fps_set_subgroup(f, 4, &c) == FPS_ERR_NOT_A_DIVISOR);
    fps_set_destroy(h);
    fps_set_destroy(a);
    fps_field_destroy(f);

    fps_field g = nullptr;
    REQUIRE(fps_field_create(101, &g) == FPS_OK);
    fps_set s = nullptr;
    REQUIRE(fps_set_interval(g, 3, &s) == FPS_OK);
    fps_u128 e{};
    for (fps_method m : {FPS_METHOD_BRUTE, FPS_METHOD_CONVOLUTION, FPS_METHOD_FOURIER}) {
        CHECK(fps_additive_energy(g, s, s, m, &e) == FPS_OK);
        CHECK(wide(e) == "19");
    }
    fps_rep rep = nullptr;
    REQUIRE(fps_rep_add(g, s, s, 0, FPS_METHOD_CONVOLUTION, &rep) == FPS_OK);
    CHECK(fps_rep_length(rep) == 101);
    std::uint64_t cnt = 0;
    CHECK(fps_rep_count(rep, 4, &cnt) == FPS_OK);
    CHECK(cnt == 3);
    fps_rep_destroy(rep);

    fps_set z = nullptr;
    REQUIRE(fps_set_parse_list(g, "0,1", &z) == FPS_OK);
    CHECK(fps_mult_energy(g, z, 2, FPS_METHOD_CONVOLUTION, &e) == FPS_ERR_ZERO_IN_SET);
    fps_set_destroy(z);

    fps_set h25 = nullptr;
    REQUIRE(fps_set_subgroup(g, 25, &h25) == FPS_OK);
    CHECK(fps_mult_energy(g, h25, 4, FPS_METHOD_CONVOLUTION, &e) == FPS_OK);
    CHECK(wide(e) == "9765625");
    CHECK(fps_mult_energy(g, h25, 4, FPS_METHOD_BRUTE, &e) == FPS_OK);
    CHECK(wide(e) == "9765625");
    CHECK(fps_sigma_mult(g, h25, &e) == FPS_OK);
    CHECK(wide(e) == "625");
    fps_set_destroy(h25);
    fps_set_destroy(s);
    fps_field_destroy(g);
}

TEST_CASE("wide integers format exactly") {
    char buf[48];
    CHECK(fps_u128_format({1, 0}, buf, sizeof buf) == FPS_OK);
    CHECK(std::string(buf) == "18446744073709551616");
    CHECK(fps_u128_format({0, 12345}, buf, 3) == FPS_ERR_BUFFER_TOO_SMALL);
}

TEST_CASE("incidence scenes through the C interface") {
    const std::string path = tmp_path("scene.txt");
    {
        std::ofstream out(path);
        out << "q=3 dim=3\n";
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                for (int z = 0; z < 3; ++z) out << "P " << x << ' ' << y << ' ' << z << " 1\n";
        out << "S 0 0 1 0 1\n";
    }
    fps_scene s = nullptr;
    REQUIRE(fps_scene_read_file(path.c_str(), &s) == FPS_OK);
    double w = 0;
    std::uint64_t n = 0;
    CHECK(fps_scene_incidences(s, &w, &n) == FPS_OK);
    CHECK(n == 9);
    fps_ratio_report r{};
    CHECK(fps_scene_misha(s, 0, &r) == FPS_ERR_PRECONDITION);
    CHECK(fps_scene_misha(s, 1, &r) == FPS_OK);
    size_t k = 0;
    CHECK(fps_scene_collinear_max(s, &k) == FPS_OK);
    CHECK(k == 3);
    double lhs = 0, rhs = 0;
    int pass = 0;
    CHECK(fps_scene_point_plane(s, &lhs, &rhs, &pass) == FPS_ERR_MEAN_ZERO_VIOLATED);
    CHECK(fps_scene_randomize_weights(s, 4, 1) == FPS_OK);
    CHECK(fps_scene_point_plane(s, &lhs, &rhs, &pass) == FPS_OK);
    CHECK(pass == 1);
    fps_scene_destroy(s);
    std::remove(path.c_str());
    CHECK(fps_scene_read_file("no/such/file", &s) == FPS_ERR_IO);

    fps_field f = nullptr;
    REQUIRE(fps_field_create(101, &f) == FPS_OK);
    fps_set a = nullptr;
    REQUIRE(fps_set_interval(f, 5, &a) == FPS_OK);
    const std::uint32_t line[3] = {100, 1, 0};
    CHECK(fps_line_point(f, a, a, line, 1, &r) == FPS_OK);
    CHECK(r.incidences == 5);
    CHECK(r.excess == doctest::Approx(5.0 - 25.0 / 101.0));
    fps_set_destroy(a);
    fps_field_destroy(f);
}

TEST_CASE("verification rows and baselines through the C interface") {
    fps_field f = nullptr;
    REQUIRE(fps_field_create(101, &f) == FPS_OK);
    fps_rows rows = nullptr;
    REQUIRE(fps_rows_create(&rows) == FPS_OK);
    fps_set h = nullptr;
    REQUIRE(fps_set_subgroup(f, 25, &h) == FPS_OK);
    CHECK(fps_verify(f, h, "main", 0.5, FPS_RULE_FULL_SPECTRUM, nullptr, "subgroup", 0, rows) == FPS_OK);
    CHECK(fps_verify(f, h, "fermat", 0.5, FPS_RULE_FULL_SPECTRUM, nullptr, "subgroup", 0, rows) ==
          FPS_ERR_INVALID_ARGUMENT);
    CHECK(fps_verify(f, h, "main", 0.5, FPS_RULE_EXPLICIT, nullptr, "subgroup", 0, rows) == FPS_ERR_INVALID_ARGUMENT);
    fps_tightness t{};
    CHECK(fps_verify_tightness(f, 25, 0.1, rows, &t) == FPS_OK);
    CHECK(t.coset_found == 1);
    CHECK(t.e4_exact == 1);
    REQUIRE(fps_rows_count(rows) == 2);
    fps_report r{};
    CHECK(fps_rows_get(rows, 0, &r) == FPS_OK);
    CHECK(std::string(r.theorem) == "main");
    CHECK(r.p == 101);
    CHECK(r.set_size == 25);
    CHECK(fps_rows_get(rows, 1, &r) == FPS_OK);
    CHECK(wide(r.lhs_exact) == "9765625");
    CHECK(fps_rows_get(rows, 2, &r) == FPS_ERR_OUT_OF_RANGE);

    const std::string csv = tmp_path("rows.csv");
    const std::string base = tmp_path("base.json");
    CHECK(fps_rows_write_csv(rows, csv.c_str()) == FPS_OK);
    CHECK(fps_baseline_bless(rows, base.c_str()) == FPS_OK);
    size_t count = 0, failures = 0;
    CHECK(fps_baseline_check(rows, base.c_str(), nullptr, 0, &count, &failures) == FPS_OK);
    CHECK(count == 2);
    CHECK(failures == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "theorem,family,rule,p,seed,eps,set_size,delta,r_size,precondition_ok,lhs_exact,lhs,rhs,ratio,ratio_log,notes");
    in.close();
    std::remove(csv.c_str());
    std::remove(base.c_str());
    CHECK(fps_baseline_check(rows, "no/such/file", nullptr, 0, &count, &failures) == FPS_ERR_IO);

    fps_set_destroy(h);
    fps_rows_destroy(rows);
    fps_field_destroy(f);
}

TEST_CASE("sweeps through the C interface") {
    const std::string cfg = tmp_path("sweep.conf");
    {
        std::ofstream out(cfg);
        out << "primes = 101\nfamilies = interval, subgroup\neps = 0.25\nseeds = 0\ntheorems = main, e4\n"
               "output = swept.csv\n";
    }
    char output[256];
    char baseline[256];
    CHECK(fps_sweep_config_paths(cfg.c_str(), output, sizeof output, baseline, sizeof baseline) == FPS_OK);
    CHECK(std::string(output) == "swept.csv");
    CHECK(std::string(baseline).empty());
    fps_rows rows = nullptr;
    REQUIRE(fps_rows_create(&rows) == FPS_OK);
    CHECK(fps_sweep_run(cfg.c_str(), 2, rows) == FPS_OK);
    CHECK(fps_rows_count(rows) == 4);
    fps_rows_destroy(rows);
    {
        std::ofstream out(cfg);
        out << "primes = 100\n";
    }
    REQUIRE(fps_rows_create(&rows) == FPS_OK);
    CHECK(fps_sweep_run(cfg.c_str(), 1, rows) == FPS_ERR_CONFIG);
    fps_rows_destroy(rows);
    std::remove(cfg.c_str());
}

TEST_CASE("selftest through the C interface") {
    size_t count = 0, failures = 0;
    REQUIRE(fps_selftest(nullptr, 0, &count, &failures) == FPS_OK);
    CHECK(count > 5);
    CHECK(failures == 0);
}
