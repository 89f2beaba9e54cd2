#include "fpspec/fpspec.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "fpspec/energy.hpp"
#include "fpspec/error.hpp"
#include "fpspec/fourier.hpp"
#include "fpspec/fp_set.hpp"
#include "fpspec/harness.hpp"
#include "fpspec/incidence.hpp"
#include "fpspec/prime_field.hpp"

struct fps_field_s {
    fpspec::PrimeField field;
};
struct fps_set_s {
    fpspec::FpSet set;
};
struct fps_table_s {
    fpspec::FourierTable table;
};
struct fps_rep_s {
    fpspec::RepFunction rep;
};
struct fps_scene_s {
    fpspec::IncidenceScene scene;
};
struct fps_rows_s {
    std::vector<fpspec::TheoremReport> rows;
};

namespace {

thread_local std::string g_last_error;

fps_status to_status(fpspec::ErrorCode code) {
    return static_cast<fps_status>(static_cast<int>(code));
}

template <class F>
fps_status try_(F&& f) {
    g_last_error.clear();
    try {
        f();
    } catch (const fpspec::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FPS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FPS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return FPS_ERR_INTERNAL;
    }
    return FPS_OK;
}

// Null handles are reported with their own status code.
fps_status null_status(const char* what) {
    g_last_error = std::string("null ") + what;
    return FPS_ERR_NULL_POINTER;
}

fps_u128 to_c(fpspec::u128 v) {
    return {static_cast<uint64_t>(v >> 64), static_cast<uint64_t>(v)};
}

fpspec::u128 from_c(fps_u128 v) {
    return (static_cast<fpspec::u128>(v.hi) << 64) | v.lo;
}

void copy_str(char* dst, std::size_t cap, const std::string& src) {
    if (cap == 0) return;
    const std::size_t n = std::min(cap - 1, src.size());
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

fpspec::Method to_method(fps_method m) {
    switch (m) {
        case FPS_METHOD_BRUTE: return fpspec::Method::Brute;
        case FPS_METHOD_CONVOLUTION: return fpspec::Method::Convolution;
        case FPS_METHOD_FOURIER: return fpspec::Method::Fourier;
    }
    throw fpspec::Error(fpspec::ErrorCode::InvalidArgument, "unknown method");
}

fpspec::RRule to_rule(fps_rule r) {
    switch (r) {
        case FPS_RULE_FULL_SPECTRUM: return fpspec::RRule::FullSpectrum;
        case FPS_RULE_COSET_SEARCH: return fpspec::RRule::CosetSearch;
        case FPS_RULE_EXPLICIT: return fpspec::RRule::Explicit;
    }
    throw fpspec::Error(fpspec::ErrorCode::InvalidArgument, "unknown rule");
}

std::ofstream open_out(const char* path) {
    std::ofstream out(path);
    if (!out) throw fpspec::Error(fpspec::ErrorCode::Io, std::string("cannot write ") + path);
    return out;
}

std::ifstream open_in(const char* path) {
    std::ifstream in(path);
    if (!in) throw fpspec::Error(fpspec::ErrorCode::Io, std::string("cannot read ") + path);
    return in;
}

void finish_write(std::ofstream& out, const char* path) {
    out.flush();
    if (!out) throw fpspec::Error(fpspec::ErrorCode::Io, std::string("write failed: ") + path);
}

fps_set wrap(fpspec::FpSet s) {
    return new fps_set_s{std::move(s)};
}

fps_ratio_report to_c(const fpspec::MishaReport& r) {
    return {r.incidences, r.k, r.excess, r.bound, r.ratio};
}

fps_ratio_report to_c(const fpspec::LinePointReport& r) {
    return {r.incidences, 0, r.excess, r.bound, r.ratio};
}

fpspec::SweepConfig load_config(const char* path) {
    if (path == nullptr || *path == '\0') return {};
    std::ifstream in = open_in(path);
    return fpspec::parse_sweep_config(in);
}

}  // namespace

extern "C" {

const char* fps_last_error(void) {
    return g_last_error.c_str();
}

const char* fps_status_name(fps_status status) {
    switch (status) {
        case FPS_OK: return "ok";
        case FPS_ERR_NULL_POINTER: return "NullPointer";
        case FPS_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
        case FPS_ERR_INTERNAL: return "Internal";
        default: break;
    }
    const int v = static_cast<int>(status);
    if (v >= 1 && v <= static_cast<int>(fpspec::ErrorCode::InvalidArgument)) {
        return fpspec::error_code_name(static_cast<fpspec::ErrorCode>(v));
    }
    return "Unknown";
}

const char* fps_version(void) {
    return "1.0.0";
}

fps_status fps_u128_format(fps_u128 v, char* buf, size_t len) {
    if (buf == nullptr) return null_status("buffer");
    const std::string s = fpspec::to_string(from_c(v));
    if (len < s.size() + 1) {
        g_last_error = "buffer too small";
        return FPS_ERR_BUFFER_TOO_SMALL;
    }
    copy_str(buf, len, s);
    return FPS_OK;
}

// ---- field ---------------------------------------------------------------

fps_status fps_field_create(uint64_t p, fps_field* out) {
    if (out == nullptr) return null_status("output");
    return try_([&] { *out = new fps_field_s{fpspec::PrimeField(p)}; });
}

void fps_field_destroy(fps_field field) {
    delete field;
}

uint32_t fps_field_modulus(fps_field field) {
    return field ? field->field.p() : 0;
}

uint32_t fps_field_generator(fps_field field) {
    return field ? field->field.generator() : 0;
}

fps_status fps_field_dlog(fps_field field, uint32_t x, uint32_t* out) {
    if (field == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        if (x >= field->field.p()) fpspec::fail(fpspec::ErrorCode::OutOfRange, "element not reduced");
        *out = field->field.dlog(x);
    });
}

fps_status fps_field_pow(fps_field field, uint64_t e, uint32_t* out) {
    if (field == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = field->field.pow(e); });
}

// ---- sets ----------------------------------------------------------------

fps_status fps_set_from_values(fps_field field, const int64_t* values, size_t n, fps_set* out) {
    if (field == nullptr || out == nullptr || (values == nullptr && n > 0)) return null_status("argument");
    return try_([&] {
        *out = wrap(fpspec::FpSet(field->field.p(), std::span<const std::int64_t>(values, n)));
    });
}

fps_status fps_set_parse_list(fps_field field, const char* text, fps_set* out) {
    if (field == nullptr || text == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::parse_set_list(field->field.p(), text)); });
}

fps_status fps_set_read_file(fps_field field, const char* path, fps_set* out) {
    if (field == nullptr || path == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        std::ifstream in = open_in(path);
        fpspec::FpSet s = fpspec::read_set(in);
        if (s.modulus() != field->field.p()) {
            fpspec::fail(fpspec::ErrorCode::InvalidArgument,
                         std::string("set file is over p=") + std::to_string(s.modulus()));
        }
        *out = wrap(std::move(s));
    });
}

fps_status fps_set_write_file(fps_set set, const char* path) {
    if (set == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_set(out, set->set);
        finish_write(out, path);
    });
}

fps_status fps_set_interval(fps_field field, uint64_t n, fps_set* out) {
    if (field == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::interval(field->field, n)); });
}

fps_status fps_set_random(fps_field field, uint64_t size, uint64_t seed, int avoid_zero, fps_set* out) {
    if (field == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::random_set(field->field, size, seed, avoid_zero != 0)); });
}

fps_status fps_set_subgroup(fps_field field, uint64_t d, fps_set* out) {
    if (field == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::mult_subgroup(field->field, d)); });
}

fps_status fps_set_coset(fps_field field, fps_set subgroup, uint32_t lambda, fps_set* out) {
    if (field == nullptr || subgroup == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::coset(field->field, subgroup->set, lambda)); });
}

fps_status fps_set_family(fps_field field, const char* family, uint64_t seed, double size_exponent,
                          fps_set* out) {
    if (field == nullptr || family == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::make_family(field->field, family, seed, size_exponent)); });
}

fps_status fps_set_sumset(fps_field field, fps_set a, fps_set b, fps_set* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::sumset(field->field, a->set, b->set)); });
}

fps_status fps_set_product(fps_field field, fps_set a, fps_set b, fps_set* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = wrap(fpspec::product_set(field->field, a->set, b->set)); });
}

void fps_set_destroy(fps_set set) {
    delete set;
}

size_t fps_set_size(fps_set set) {
    return set ? set->set.size() : 0;
}

size_t fps_set_elements(fps_set set, uint32_t* out, size_t cap) {
    if (set == nullptr || out == nullptr) return 0;
    const auto el = set->set.elements();
    const std::size_t n = std::min(cap, el.size());
    std::copy_n(el.begin(), n, out);
    return n;
}

// ---- Fourier -------------------------------------------------------------

fps_status fps_table_create(fps_field field, fps_set a, fps_method method, fps_table* out) {
    if (field == nullptr || a == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        if (a->set.modulus() != field->field.p()) {
            fpspec::fail(fpspec::ErrorCode::InvalidArgument, "set and field moduli differ");
        }
        const fpspec::Method m = to_method(method);
        *out = new fps_table_s{m == fpspec::Method::Brute ? fpspec::dft_direct(field->field, a->set)
                                                          : fpspec::dft_fast(field->field, a->set)};
    });
}

void fps_table_destroy(fps_table table) {
    delete table;
}

fps_status fps_table_value(fps_table table, uint32_t xi, double* re, double* im, double* mag2) {
    if (table == nullptr) return null_status("table");
    return try_([&] {
        if (xi >= table->table.modulus()) fpspec::fail(fpspec::ErrorCode::OutOfRange, "frequency not reduced");
        if (re) *re = table->table.values()[xi].real();
        if (im) *im = table->table.values()[xi].imag();
        if (mag2) *mag2 = table->table.mag2()[xi];
    });
}

fps_status fps_table_write_csv(fps_table table, const char* path) {
    if (table == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_table_csv(out, table->table);
        finish_write(out, path);
    });
}

fps_status fps_table_max_nonzero_magnitude(fps_table table, double* out) {
    if (table == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = fpspec::max_nonzero_magnitude(table->table); });
}

fps_status fps_spectrum(fps_table table, double eps, uint32_t* elements, double* magnitudes, size_t cap,
                        size_t* count) {
    if (table == nullptr || count == nullptr) return null_status("argument");
    fps_status st = try_([&] {
        const auto spec = fpspec::spectrum(table->table, eps);
        *count = spec.elements.size();
        if (elements == nullptr) return;
        const std::size_t n = std::min(cap, spec.elements.size());
        std::copy_n(spec.elements.begin(), n, elements);
        if (magnitudes) std::copy_n(spec.magnitudes.begin(), n, magnitudes);
    });
    if (st == FPS_OK && elements != nullptr && *count > cap) {
        g_last_error = "spectrum has " + std::to_string(*count) + " elements";
        return FPS_ERR_BUFFER_TOO_SMALL;
    }
    return st;
}

// ---- energies ------------------------------------------------------------

fps_status fps_rep_add(fps_field field, fps_set a, fps_set b, int minus, fps_method method, fps_rep* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        *out = new fps_rep_s{fpspec::rep_add(field->field, a->set, b->set,
                                             minus ? fpspec::AddSign::Minus : fpspec::AddSign::Plus,
                                             to_method(method))};
    });
}

fps_status fps_rep_mul(fps_field field, fps_set a, fps_set b, int ratio, fps_rep* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        *out = new fps_rep_s{fpspec::rep_mul(field->field, a->set, b->set,
                                             ratio ? fpspec::MulOp::Ratio : fpspec::MulOp::Product)};
    });
}

void fps_rep_destroy(fps_rep rep) {
    delete rep;
}

size_t fps_rep_length(fps_rep rep) {
    return rep ? rep->rep.counts.size() : 0;
}

fps_status fps_rep_count(fps_rep rep, size_t index, uint64_t* out) {
    if (rep == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        if (index >= rep->rep.counts.size()) fpspec::fail(fpspec::ErrorCode::OutOfRange, "index out of range");
        *out = rep->rep.counts[index];
    });
}

fps_status fps_rep_write_csv(fps_rep rep, const char* path) {
    if (rep == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_rep_csv(out, rep->rep);
        finish_write(out, path);
    });
}

fps_status fps_additive_energy(fps_field field, fps_set a, fps_set b, fps_method method, fps_u128* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = to_c(fpspec::additive_energy(field->field, a->set, b->set, to_method(method)).value); });
}

fps_status fps_balanced_energy(fps_field field, fps_set a, double* fourier, double* identity) {
    if (field == nullptr || a == nullptr) return null_status("argument");
    return try_([&] {
        const auto e = fpspec::balanced_additive_energy(field->field, a->set);
        if (fourier) *fourier = e.fourier;
        if (identity) *identity = e.identity;
    });
}

fps_status fps_mult_energy(fps_field field, fps_set r, unsigned k, fps_method method, fps_u128* out) {
    if (field == nullptr || r == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        const auto m = to_method(method);
        *out = to_c(m == fpspec::Method::Brute ? fpspec::mult_energy_k_brute(field->field, r->set, k).value
                                               : fpspec::mult_energy_k(field->field, r->set, k).value);
    });
}

fps_status fps_sigma_mult(fps_field field, fps_set r, fps_u128* out) {
    if (field == nullptr || r == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = to_c(fpspec::sigma_mult(field->field, r->set).value); });
}

fps_status fps_c4_aggregates(fps_field field, fps_set a, fps_u128* sum, fps_u128* sum_sq) {
    if (field == nullptr || a == nullptr) return null_status("argument");
    return try_([&] {
        const auto c = fpspec::c4_aggregates(field->field, a->set);
        if (sum) *sum = to_c(c.sum);
        if (sum_sq) *sum_sq = to_c(c.sum_sq);
    });
}

fps_status fps_rep_sq_sum_aa(fps_field field, fps_set a, fps_method method, fps_u128* out) {
    if (field == nullptr || a == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        const auto m = to_method(method);
        *out = to_c(m == fpspec::Method::Brute ? fpspec::rep_sq_sum_aa_brute(field->field, a->set)
                                               : fpspec::rep_sq_sum_aa(field->field, a->set));
    });
}

// ---- incidences ----------------------------------------------------------

fps_status fps_scene_read_file(const char* path, fps_scene* out) {
    if (path == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        std::ifstream in = open_in(path);
        *out = new fps_scene_s{fpspec::read_scene(in)};
    });
}

fps_status fps_scene_random(uint64_t q, unsigned dim, size_t n_points, size_t n_surfaces, uint64_t seed,
                            fps_scene* out) {
    if (out == nullptr) return null_status("output");
    return try_([&] { *out = new fps_scene_s{fpspec::random_scene(q, dim, n_points, n_surfaces, seed)}; });
}

fps_status fps_scene_randomize_weights(fps_scene scene, uint64_t seed, int center_points) {
    if (scene == nullptr) return null_status("scene");
    return try_([&] { fpspec::randomize_weights(scene->scene, seed, center_points != 0); });
}

fps_status fps_scene_write_file(fps_scene scene, const char* path) {
    if (scene == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_scene(out, scene->scene);
        finish_write(out, path);
    });
}

void fps_scene_destroy(fps_scene scene) {
    delete scene;
}

fps_status fps_scene_incidences(fps_scene scene, double* weighted, uint64_t* count) {
    if (scene == nullptr) return null_status("scene");
    return try_([&] {
        if (weighted) *weighted = fpspec::incidences(scene->scene);
        if (count) *count = fpspec::incidence_count(scene->scene);
    });
}

fps_status fps_scene_point_plane(fps_scene scene, double* lhs, double* rhs, int* pass) {
    if (scene == nullptr) return null_status("scene");
    return try_([&] {
        const auto v = fpspec::check_point_plane(scene->scene);
        if (lhs) *lhs = v.lhs;
        if (rhs) *rhs = v.rhs;
        if (pass) *pass = v.pass ? 1 : 0;
    });
}

fps_status fps_scene_collinear_max(fps_scene scene, size_t* k) {
    if (scene == nullptr || k == nullptr) return null_status("argument");
    return try_([&] {
        std::vector<fpspec::Point3> pts;
        pts.reserve(scene->scene.points().size());
        for (const auto& pt : scene->scene.points()) pts.push_back(pt.coords);
        *k = fpspec::collinear_max(pts, scene->scene.field());
    });
}

fps_status fps_scene_misha(fps_scene scene, int swap_roles, fps_ratio_report* out) {
    if (scene == nullptr || out == nullptr) return null_status("argument");
    return try_([&] { *out = to_c(fpspec::misha_ratio(scene->scene, swap_roles != 0)); });
}

fps_status fps_line_point(fps_field field, fps_set a, fps_set b, const uint32_t* lines, size_t n,
                          fps_ratio_report* out) {
    if (field == nullptr || a == nullptr || b == nullptr || out == nullptr || (lines == nullptr && n > 0)) {
        return null_status("argument");
    }
    return try_([&] {
        std::vector<fpspec::Line2> ls(n);
        for (std::size_t i = 0; i < n; ++i) {
            ls[i] = {field->field.reduce(lines[3 * i]), field->field.reduce(lines[3 * i + 1]),
                     field->field.reduce(lines[3 * i + 2])};
        }
        *out = to_c(fpspec::line_point_ratio(field->field, a->set, b->set, ls));
    });
}

// ---- harness -------------------------------------------------------------

fps_status fps_rows_create(fps_rows* out) {
    if (out == nullptr) return null_status("output");
    return try_([&] { *out = new fps_rows_s{}; });
}

void fps_rows_destroy(fps_rows rows) {
    delete rows;
}

size_t fps_rows_count(fps_rows rows) {
    return rows ? rows->rows.size() : 0;
}

fps_status fps_rows_get(fps_rows rows, size_t index, fps_report* out) {
    if (rows == nullptr || out == nullptr) return null_status("argument");
    return try_([&] {
        if (index >= rows->rows.size()) fpspec::fail(fpspec::ErrorCode::OutOfRange, "row index out of range");
        const auto& r = rows->rows[index];
        fps_report c{};
        copy_str(c.theorem, sizeof c.theorem, r.theorem_id);
        copy_str(c.family, sizeof c.family, r.family);
        copy_str(c.rule, sizeof c.rule, r.rule);
        c.p = r.p;
        c.seed = r.seed;
        c.eps = r.eps;
        c.set_size = r.set_size;
        c.delta = r.delta;
        c.r_size = r.r_size;
        c.precondition_ok = r.precondition_ok ? 1 : 0;
        c.has_lhs_exact = r.lhs_exact.has_value() ? 1 : 0;
        if (r.lhs_exact) c.lhs_exact = to_c(*r.lhs_exact);
        c.lhs = r.lhs;
        c.rhs = r.rhs;
        c.ratio = r.ratio;
        c.ratio_log = r.ratio_log;
        copy_str(c.notes, sizeof c.notes, r.notes);
        *out = c;
    });
}

fps_status fps_verify(fps_field field, fps_set a, const char* theorem, double eps, fps_rule rule,
                      fps_set explicit_r, const char* family, uint64_t seed, fps_rows rows) {
    if (field == nullptr || a == nullptr || theorem == nullptr || rows == nullptr) return null_status("argument");
    return try_([&] {
        const std::string id = theorem;
        const fpspec::RRule rr = to_rule(rule);
        const fpspec::FpSet* r = nullptr;
        if (rr == fpspec::RRule::Explicit) {
            if (explicit_r == nullptr) fpspec::fail(fpspec::ErrorCode::InvalidArgument, "explicit rule needs a set");
            r = &explicit_r->set;
        }
        fpspec::TheoremReport rep;
        if (id == "main") {
            rep = fpspec::verify_main(field->field, a->set, eps, rr, r);
        } else if (id == "sigma") {
            rep = fpspec::verify_sigma(field->field, a->set, eps, rr, r);
        } else if (id == "e4") {
            rep = fpspec::verify_e4(field->field, a->set, eps);
        } else if (id == "zero_sum") {
            rep = fpspec::verify_zero_sum(field->field, a->set);
        } else if (id == "aa_plus_aa") {
            rep = fpspec::verify_aa_plus_aa(field->field, a->set);
        } else if (id == "example") {
            rep = fpspec::verify_example(field->field, a->set, eps);
        } else if (id == "misha") {
            rep = fpspec::verify_misha(field->field, a->set);
        } else if (id == "line_point") {
            rep = fpspec::verify_line_point(field->field, a->set);
        } else {
            fpspec::fail(fpspec::ErrorCode::InvalidArgument, "unknown theorem '" + id + "'");
        }
        rep.family = family ? family : "explicit";
        rep.seed = seed;
        rep.eps = eps;
        rows->rows.push_back(std::move(rep));
    });
}

fps_status fps_verify_tightness(fps_field field, uint64_t d, double eps, fps_rows rows, fps_tightness* out) {
    if (field == nullptr) return null_status("field");
    return try_([&] {
        auto t = fpspec::tightness_subgroup(field->field, d, eps);
        if (out) {
            *out = {t.coset_found ? 1 : 0, t.lambda,           t.e4_exact ? 1 : 0, t.e2_exact ? 1 : 0,
                    t.max_nonzero_mag,     t.mag_over_sqrt_p,  t.balanced_energy,  t.balanced_inequality ? 1 : 0};
        }
        if (rows) rows->rows.push_back(std::move(t.report));
    });
}

fps_status fps_sweep_run(const char* config_path, unsigned jobs, fps_rows rows) {
    if (rows == nullptr) return null_status("rows");
    return try_([&] {
        auto out = fpspec::run_sweep(load_config(config_path), jobs == 0 ? 1 : jobs);
        for (auto& r : out) rows->rows.push_back(std::move(r));
    });
}

fps_status fps_sweep_config_paths(const char* config_path, char* output, size_t output_len, char* baseline,
                                  size_t baseline_len) {
    return try_([&] {
        const auto cfg = load_config(config_path);
        if (output) copy_str(output, output_len, cfg.output);
        if (baseline) copy_str(baseline, baseline_len, cfg.baseline);
    });
}

fps_status fps_rows_write_csv(fps_rows rows, const char* path) {
    if (rows == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_reports_csv(out, rows->rows);
        finish_write(out, path);
    });
}

fps_status fps_rows_write_jsonl(fps_rows rows, const char* path) {
    if (rows == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ofstream out = open_out(path);
        fpspec::write_reports_jsonl(out, rows->rows);
        finish_write(out, path);
    });
}

fps_status fps_baseline_bless(fps_rows rows, const char* path) {
    if (rows == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        const auto table = fpspec::max_ratios(rows->rows);
        std::ostringstream buf;
        fpspec::write_baseline(buf, table);
        std::ofstream out = open_out(path);
        out << buf.str();
        finish_write(out, path);
    });
}

fps_status fps_baseline_check(fps_rows rows, const char* path, fps_baseline_entry* entries, size_t cap,
                              size_t* count, size_t* failures) {
    if (rows == nullptr || path == nullptr) return null_status("argument");
    return try_([&] {
        std::ifstream in = open_in(path);
        const auto baseline = fpspec::read_baseline(in);
        const auto checks = fpspec::check_baseline(fpspec::max_ratios(rows->rows), baseline);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const auto& c = checks[i];
            if (!c.pass) ++bad;
            if (entries == nullptr || i >= cap) continue;
            fps_baseline_entry e{};
            copy_str(e.theorem, sizeof e.theorem, c.theorem);
            copy_str(e.family, sizeof e.family, c.family);
            e.max_ratio = c.max_ratio;
            e.baseline = c.baseline;
            e.allowed = c.allowed;
            e.pass = c.pass ? 1 : 0;
            copy_str(e.notes, sizeof e.notes, c.notes);
            entries[i] = e;
        }
        if (count) *count = checks.size();
        if (failures) *failures = bad;
    });
}

fps_status fps_selftest(fps_check* checks, size_t cap, size_t* count, size_t* failures) {
    return try_([&] {
        const auto res = fpspec::selftest();
        std::size_t bad = 0;
        for (std::size_t i = 0; i < res.size(); ++i) {
            if (!res[i].pass) ++bad;
            if (checks == nullptr || i >= cap) continue;
            fps_check c{};
            copy_str(c.name, sizeof c.name, res[i].name);
            c.pass = res[i].pass ? 1 : 0;
            copy_str(c.detail, sizeof c.detail, res[i].detail);
            checks[i] = c;
        }
        if (count) *count = res.size();
        if (failures) *failures = bad;
    });
}

}  // extern "C"
