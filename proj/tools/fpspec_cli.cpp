// fpspec command-line front end. Links only the C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpspec/fpspec.h"

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

const char* const kFormats = R"(Output formats
  spectrum --out      CSV  xi,magnitude           (Spec_eps(A), increasing xi)
  spectrum --table    CSV  xi,re,im,mag2          (every frequency)
  energy --out        CSV  index,count            (representation function; multiplicative
                                                   indices are exponents e standing for g^e)
  subgroup --out      set file: "p=<p>" then one element per line
  verify/sweep --out  CSV  theorem,family,rule,p,seed,eps,set_size,delta,r_size,
                           precondition_ok,lhs_exact,lhs,rhs,ratio,ratio_log,notes
  --jsonl             one JSON object per row with the same keys (null for inf/nan)
  baseline            JSON {"<theorem>": {"<family>": max_ratio}}
Floating-point values carry 12 significant digits. --seed defaults to 0.)";

// Raised for failures reported by the library.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(fps_status st) {
    if (st != FPS_OK) {
        throw ComputationError(std::string(fps_status_name(st)) + ": " + fps_last_error());
    }
}

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string wide(fps_u128 v) {
    char buf[48];
    check(fps_u128_format(v, buf, sizeof buf));
    return buf;
}

struct FieldDeleter {
    void operator()(fps_field f) const { fps_field_destroy(f); }
};
struct SetDeleter {
    void operator()(fps_set s) const { fps_set_destroy(s); }
};
struct TableDeleter {
    void operator()(fps_table t) const { fps_table_destroy(t); }
};
struct RepDeleter {
    void operator()(fps_rep r) const { fps_rep_destroy(r); }
};
struct SceneDeleter {
    void operator()(fps_scene s) const { fps_scene_destroy(s); }
};
struct RowsDeleter {
    void operator()(fps_rows r) const { fps_rows_destroy(r); }
};

using Field = std::unique_ptr<fps_field_s, FieldDeleter>;
using Set = std::unique_ptr<fps_set_s, SetDeleter>;
using Table = std::unique_ptr<fps_table_s, TableDeleter>;
using Rep = std::unique_ptr<fps_rep_s, RepDeleter>;
using Scene = std::unique_ptr<fps_scene_s, SceneDeleter>;
using Rows = std::unique_ptr<fps_rows_s, RowsDeleter>;

Field make_field(std::uint64_t p) {
    fps_field f = nullptr;
    check(fps_field_create(p, &f));
    return Field(f);
}

Rows make_rows() {
    fps_rows r = nullptr;
    check(fps_rows_create(&r));
    return Rows(r);
}

std::vector<std::uint32_t> elements(fps_set s) {
    std::vector<std::uint32_t> out(fps_set_size(s));
    fps_set_elements(s, out.data(), out.size());
    return out;
}

std::string join(const std::vector<std::uint32_t>& v, std::size_t limit = 40) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    if (v.size() > limit) out += ", ...";
    return out + "}";
}

// Flags describing one input set.
struct SetOptions {
    std::string list;
    std::string file;
    std::string family;
    std::uint64_t d = 0;
    std::uint64_t n = 0;
    std::uint32_t lambda = 0;
    double size_exponent = 0.7;

    void add(CLI::App* cmd, const std::string& prefix = "", const std::string& what = "A") {
        cmd->add_option("--" + prefix + "set", list, "Set " + what + " as a comma list, e.g. 1,2,4");
        cmd->add_option("--" + prefix + "set-file", file, "Set " + what + " from a set file");
        if (!prefix.empty()) return;
        cmd->add_option("--family", family, "Generated set: interval, random, subgroup or coset")
            ->check(CLI::IsMember({"interval", "random", "subgroup", "coset"}));
        cmd->add_option("--d", d, "Subgroup order for --family subgroup/coset");
        cmd->add_option("--n", n, "Size for --family interval/random");
        cmd->add_option("--lambda", lambda, "Coset multiplier for --family coset (default: smallest non-member)");
        cmd->add_option("--size-exponent", size_exponent,
                        "Family size round(p^x) when --n/--d are omitted")
            ->capture_default_str();
    }

    Set build(fps_field field, std::uint64_t seed) const {
        const int sources = !list.empty() + !file.empty() + !family.empty();
        if (sources != 1) throw UsageError("give exactly one of --set, --set-file, --family");
        fps_set s = nullptr;
        if (!list.empty()) {
            check(fps_set_parse_list(field, list.c_str(), &s));
        } else if (!file.empty()) {
            check(fps_set_read_file(field, file.c_str(), &s));
        } else if ((family == "interval" || family == "random") && n > 0) {
            check(family == "interval" ? fps_set_interval(field, n, &s) : fps_set_random(field, n, seed, 1, &s));
        } else if ((family == "subgroup" || family == "coset") && d > 0) {
            check(fps_set_subgroup(field, d, &s));
            Set h(s);
            if (family == "subgroup") return h;
            std::uint32_t lam = lambda;
            if (lam == 0) {
                const auto el = elements(h.get());
                lam = 1;
                for (std::uint32_t x : el) {
                    if (x != lam) break;
                    ++lam;
                }
            }
            check(fps_set_coset(field, h.get(), lam, &s));
        } else {
            check(fps_set_family(field, family.c_str(), seed, size_exponent, &s));
        }
        return Set(s);
    }
};

Set build_optional(const SetOptions& opt, const std::string& prefix, fps_field field) {
    if (opt.list.empty() && opt.file.empty()) return nullptr;
    if (!opt.list.empty() && !opt.file.empty()) {
        throw UsageError("give only one of --" + prefix + "set, --" + prefix + "set-file");
    }
    return opt.build(field, 0);
}

void print_report_row(const fps_report& r) {
    std::printf("%s  family=%s rule=%s p=%llu seed=%llu eps=%s |A|=%llu delta=%s |R|=%llu\n", r.theorem, r.family,
                r.rule, static_cast<unsigned long long>(r.p), static_cast<unsigned long long>(r.seed),
                real(r.eps).c_str(), static_cast<unsigned long long>(r.set_size), real(r.delta).c_str(),
                static_cast<unsigned long long>(r.r_size));
    std::printf("  precondition_ok=%s lhs=%s%s rhs=%s ratio=%s ratio_log=%s\n", r.precondition_ok ? "true" : "false",
                real(r.lhs).c_str(), r.has_lhs_exact ? (" (exact " + wide(r.lhs_exact) + ")").c_str() : "",
                real(r.rhs).c_str(), real(r.ratio).c_str(), real(r.ratio_log).c_str());
    if (r.notes[0] != '\0') std::printf("  notes: %s\n", r.notes);
}

void write_rows(fps_rows rows, const std::string& csv, const std::string& jsonl) {
    if (!csv.empty()) check(fps_rows_write_csv(rows, csv.c_str()));
    if (!jsonl.empty()) check(fps_rows_write_jsonl(rows, jsonl.c_str()));
}

fps_method parse_method(const std::string& m) {
    if (m == "brute" || m == "direct") return FPS_METHOD_BRUTE;
    if (m == "convolution") return FPS_METHOD_CONVOLUTION;
    return FPS_METHOD_FOURIER;
}

// ---- verbs ---------------------------------------------------------------

struct Common {
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_spectrum(const Common& c, const SetOptions& so, double eps, const std::string& method,
                 const std::string& table_out) {
    Field field = make_field(c.p);
    Set a = so.build(field.get(), c.seed);
    fps_table t = nullptr;
    check(fps_table_create(field.get(), a.get(), method == "direct" ? FPS_METHOD_BRUTE : FPS_METHOD_FOURIER, &t));
    Table table(t);
    std::size_t count = 0;
    check(fps_spectrum(t, eps, nullptr, nullptr, 0, &count));
    std::vector<std::uint32_t> el(count);
    std::vector<double> mag(count);
    check(fps_spectrum(t, eps, el.data(), mag.data(), count, &count));

    std::printf("p=%llu |A|=%zu eps=%s threshold=%s\n", static_cast<unsigned long long>(c.p), fps_set_size(a.get()),
                real(eps).c_str(), real(eps * static_cast<double>(fps_set_size(a.get()))).c_str());
    std::printf("|Spec| = %zu\n", count);
    for (std::size_t i = 0; i < count; ++i) std::printf("  %u  %s\n", el[i], real(mag[i]).c_str());

    if (!c.out.empty()) {
        std::ofstream out(c.out);
        out << "xi,magnitude\n";
        for (std::size_t i = 0; i < count; ++i) out << el[i] << ',' << real(mag[i]) << '\n';
        if (!out) throw ComputationError("cannot write " + c.out);
    }
    if (!table_out.empty()) check(fps_table_write_csv(t, table_out.c_str()));
    return 0;
}

int run_energy(const Common& c, const SetOptions& so, const SetOptions& sb, const std::string& kind, unsigned k,
               const std::string& method) {
    Field field = make_field(c.p);
    Set a = so.build(field.get(), c.seed);
    Set b = build_optional(sb, "b-", field.get());
    fps_set second = b ? b.get() : a.get();
    const fps_method m = parse_method(method);
    std::printf("p=%llu |A|=%zu", static_cast<unsigned long long>(c.p), fps_set_size(a.get()));
    if (b) std::printf(" |B|=%zu", fps_set_size(b.get()));
    std::printf("\n");

    fps_rep rep = nullptr;
    if (kind == "additive" || kind == "difference") {
        fps_u128 e{};
        if (kind == "additive") {
            check(fps_additive_energy(field.get(), a.get(), second, m, &e));
            std::printf("E+ = %s (%s)\n", wide(e).c_str(), method.c_str());
        }
        check(fps_rep_add(field.get(), a.get(), second, kind == "difference",
                          m == FPS_METHOD_BRUTE ? FPS_METHOD_BRUTE : FPS_METHOD_CONVOLUTION, &rep));
    } else if (kind == "balanced") {
        double fourier = 0.0;
        double identity = 0.0;
        check(fps_balanced_energy(field.get(), a.get(), &fourier, &identity));
        std::printf("E+(f_A) = %s (Fourier) = %s (E+(A) - |A|^4/p)\n", real(fourier).c_str(), real(identity).c_str());
    } else if (kind == "multiplicative" || kind == "ratio" || kind == "product") {
        if (kind == "multiplicative") {
            fps_u128 e{};
            check(fps_mult_energy(field.get(), a.get(), k, m, &e));
            std::printf("E_%u^x = %s (%s)\n", k, wide(e).c_str(), m == FPS_METHOD_BRUTE ? "brute" : "dlog convolution");
        }
        check(fps_rep_mul(field.get(), a.get(), second, kind != "product", &rep));
    } else if (kind == "sigma") {
        fps_u128 e{};
        check(fps_sigma_mult(field.get(), a.get(), &e));
        std::printf("sigma^x = %s\n", wide(e).c_str());
    } else if (kind == "c4") {
        fps_u128 sum{};
        fps_u128 sq{};
        check(fps_c4_aggregates(field.get(), a.get(), &sum, &sq));
        std::printf("sum C4 = %s\nsum C4^2 = %s\n", wide(sum).c_str(), wide(sq).c_str());
    } else if (kind == "aa") {
        fps_u128 e{};
        check(fps_rep_sq_sum_aa(field.get(), a.get(), m == FPS_METHOD_BRUTE ? FPS_METHOD_BRUTE : FPS_METHOD_CONVOLUTION,
                                &e));
        std::printf("sum r_{AA+AA}^2 = %s\n", wide(e).c_str());
    }
    Rep holder(rep);
    if (!c.out.empty()) {
        if (!rep) throw UsageError("--out needs --kind additive, difference, multiplicative, ratio or product");
        check(fps_rep_write_csv(rep, c.out.c_str()));
    }
    return 0;
}

int run_subgroup(const Common& c, std::uint64_t d, std::uint32_t lambda, const std::vector<double>& eps_list) {
    Field field = make_field(c.p);
    fps_set s = nullptr;
    check(fps_set_subgroup(field.get(), d, &s));
    Set h(s);
    Set shown;
    if (lambda != 0) {
        check(fps_set_coset(field.get(), h.get(), lambda, &s));
        shown.reset(s);
    }
    fps_set out_set = shown ? shown.get() : h.get();
    std::printf("p=%llu g=%u d=%llu\n", static_cast<unsigned long long>(c.p), fps_field_generator(field.get()),
                static_cast<unsigned long long>(d));
    std::printf("%s = %s\n", lambda ? ("coset " + std::to_string(lambda) + "H").c_str() : "H",
                join(elements(out_set)).c_str());
    if (!c.out.empty()) check(fps_set_write_file(out_set, c.out.c_str()));

    for (double eps : eps_list) {
        fps_tightness t{};
        check(fps_verify_tightness(field.get(), d, eps, nullptr, &t));
        if (t.coset_found) {
            std::printf("eps=%s: coset %uH inside Spec \\ {0}; E4 exact=%s E2 exact=%s", real(eps).c_str(), t.lambda,
                        t.e4_exact ? "yes" : "no", t.e2_exact ? "yes" : "no");
        } else {
            std::printf("eps=%s: NoCosetFound", real(eps).c_str());
        }
        std::printf("; max|H^(r)|=%s (%s sqrt p); E+(f_H)=%s; E+(f_H) < max^2 |H|: %s\n", real(t.max_nonzero_mag).c_str(),
                    real(t.mag_over_sqrt_p).c_str(), real(t.balanced_energy).c_str(),
                    t.balanced_inequality ? "yes" : "no");
    }
    return 0;
}

std::vector<std::uint32_t> read_lines_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ComputationError("cannot read " + path);
    std::vector<std::uint32_t> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::int64_t a = 0;
        std::int64_t b = 0;
        std::int64_t d = 0;
        if (!(ls >> a)) continue;
        if (!(ls >> b >> d) || a < 0 || b < 0 || d < 0) throw ComputationError("bad line record in " + path);
        out.insert(out.end(), {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(d)});
    }
    return out;
}

struct IncidenceOptions {
    std::string scene;
    std::vector<std::uint64_t> random;  // q dim points surfaces
    std::string check = "count";
    bool swap_roles = false;
    std::string center;
    std::string lines;
};

int run_incidence(const Common& c, const IncidenceOptions& io, const SetOptions& sa, const SetOptions& sb) {
    if (io.check == "line_point") {
        if (c.p == 0 || io.lines.empty()) throw UsageError("line_point needs --p, --set/--set-file, --b-set and --lines");
        Field field = make_field(c.p);
        Set a = sa.build(field.get(), c.seed);
        Set b = build_optional(sb, "b-", field.get());
        if (!b) throw UsageError("line_point needs --b-set or --b-set-file");
        const auto lines = read_lines_file(io.lines);
        fps_ratio_report r{};
        check(fps_line_point(field.get(), a.get(), b.get(), lines.data(), lines.size() / 3, &r));
        std::printf("|A|=%zu |B|=%zu |L|=%zu I=%llu excess=%s bound=%s ratio=%s\n", fps_set_size(a.get()),
                    fps_set_size(b.get()), lines.size() / 3, static_cast<unsigned long long>(r.incidences),
                    real(r.excess).c_str(), real(r.bound).c_str(), real(r.ratio).c_str());
        return 0;
    }

    fps_scene s = nullptr;
    if (!io.scene.empty() && io.random.empty()) {
        check(fps_scene_read_file(io.scene.c_str(), &s));
    } else if (io.scene.empty() && io.random.size() == 4) {
        check(fps_scene_random(io.random[0], static_cast<unsigned>(io.random[1]), io.random[2], io.random[3], c.seed, &s));
    } else {
        throw UsageError("give --scene FILE or --random Q DIM POINTS SURFACES");
    }
    Scene scene(s);
    if (!io.center.empty()) check(fps_scene_randomize_weights(s, c.seed, io.center == "points"));
    if (!c.out.empty()) check(fps_scene_write_file(s, c.out.c_str()));

    double weighted = 0.0;
    std::uint64_t count = 0;
    check(fps_scene_incidences(s, &weighted, &count));
    std::printf("incidences=%llu weighted=%s\n", static_cast<unsigned long long>(count), real(weighted).c_str());
    if (io.check == "point_plane") {
        double lhs = 0.0;
        double rhs = 0.0;
        int pass = 0;
        check(fps_scene_point_plane(s, &lhs, &rhs, &pass));
        std::printf("|sum I alpha beta| = %s <= q |alpha| |beta| = %s: %s\n", real(lhs).c_str(), real(rhs).c_str(),
                    pass ? "pass" : "FAIL");
        return pass ? 0 : kExitComputation;
    }
    if (io.check == "collinear") {
        std::size_t k = 0;
        check(fps_scene_collinear_max(s, &k));
        std::printf("max collinear points = %zu\n", k);
    } else if (io.check == "misha") {
        fps_ratio_report r{};
        check(fps_scene_misha(s, io.swap_roles, &r));
        std::printf("I=%llu k=%llu excess=%s bound=%s ratio=%s%s\n", static_cast<unsigned long long>(r.incidences),
                    static_cast<unsigned long long>(r.k), real(r.excess).c_str(), real(r.bound).c_str(),
                    real(r.ratio).c_str(), io.swap_roles ? " (roles swapped)" : "");
    }
    return 0;
}

struct VerifyOptions {
    std::string theorem;
    double eps = 0.5;
    std::string rule = "auto";
    std::string r_list;
    std::string jsonl;
};

int run_verify(const Common& c, const SetOptions& so, const VerifyOptions& vo) {
    Field field = make_field(c.p);
    Rows rows = make_rows();
    if (vo.theorem == "tightness") {
        if (so.d == 0) throw UsageError("tightness needs --d");
        fps_tightness t{};
        check(fps_verify_tightness(field.get(), so.d, vo.eps, rows.get(), &t));
    } else {
        Set a = so.build(field.get(), c.seed);
        Set r;
        fps_rule rule = FPS_RULE_FULL_SPECTRUM;
        if (!vo.r_list.empty()) {
            fps_set rs = nullptr;
            check(fps_set_parse_list(field.get(), vo.r_list.c_str(), &rs));
            r.reset(rs);
            rule = FPS_RULE_EXPLICIT;
        } else if (vo.rule == "coset" || (vo.rule == "auto" && (so.family == "subgroup" || so.family == "coset"))) {
            rule = FPS_RULE_COSET_SEARCH;
        } else if (vo.rule == "explicit") {
            throw UsageError("--rule explicit needs --r");
        }
        const std::string family = so.family.empty() ? "explicit" : so.family;
        check(fps_verify(field.get(), a.get(), vo.theorem.c_str(), vo.eps, rule, r.get(), family.c_str(), c.seed,
                         rows.get()));
    }
    fps_report rep{};
    check(fps_rows_get(rows.get(), 0, &rep));
    print_report_row(rep);
    write_rows(rows.get(), c.out, vo.jsonl);
    return 0;
}

struct SweepOptions {
    std::string config;
    unsigned jobs = 1;
    std::string jsonl;
    std::string baseline;
    bool bless = false;
};

int run_sweep(Common c, const SweepOptions& so) {
    char out_path[1024] = {0};
    char base_path[1024] = {0};
    check(fps_sweep_config_paths(so.config.empty() ? nullptr : so.config.c_str(), out_path, sizeof out_path, base_path,
                                 sizeof base_path));
    if (c.out.empty()) c.out = out_path;
    const std::string baseline = so.baseline.empty() ? std::string(base_path) : so.baseline;

    Rows rows = make_rows();
    check(fps_sweep_run(so.config.empty() ? nullptr : so.config.c_str(), so.jobs, rows.get()));
    const std::size_t n = fps_rows_count(rows.get());
    std::size_t ok = 0;
    for (std::size_t i = 0; i < n; ++i) {
        fps_report r{};
        check(fps_rows_get(rows.get(), i, &r));
        ok += r.precondition_ok ? 1 : 0;
    }
    std::printf("%zu rows, %zu with precondition satisfied\n", n, ok);
    write_rows(rows.get(), c.out, so.jsonl);
    if (!c.out.empty()) std::printf("rows written to %s\n", c.out.c_str());

    if (so.bless) {
        if (baseline.empty()) throw UsageError("--bless needs --baseline or a baseline key in the config");
        check(fps_baseline_bless(rows.get(), baseline.c_str()));
        std::printf("baseline written to %s\n", baseline.c_str());
        return 0;
    }
    if (baseline.empty()) return 0;

    std::size_t count = 0;
    std::size_t failures = 0;
    check(fps_baseline_check(rows.get(), baseline.c_str(), nullptr, 0, &count, &failures));
    std::vector<fps_baseline_entry> entries(count);
    check(fps_baseline_check(rows.get(), baseline.c_str(), entries.data(), entries.size(), &count, &failures));
    std::printf("%-12s %-10s %14s %14s %14s  status\n", "theorem", "family", "max_ratio", "baseline", "allowed");
    for (const auto& e : entries) {
        std::printf("%-12s %-10s %14s %14s %14s  %s%s%s\n", e.theorem, e.family, real(e.max_ratio).c_str(),
                    real(e.baseline).c_str(), real(e.allowed).c_str(), e.pass ? "ok" : "REGRESSION",
                    e.notes[0] ? " " : "", e.notes);
    }
    std::printf("%zu of %zu entries within baseline\n", count - failures, count);
    return failures == 0 ? 0 : kExitComputation;
}

int run_selftest() {
    std::size_t count = 0;
    std::size_t failures = 0;
    check(fps_selftest(nullptr, 0, &count, &failures));
    std::vector<fps_check> checks(count);
    check(fps_selftest(checks.data(), checks.size(), &count, &failures));
    for (const auto& ch : checks) std::printf("%-28s %s  %s\n", ch.name, ch.pass ? "pass" : "FAIL", ch.detail);
    std::printf("%zu of %zu checks passed\n", count - failures, count);
    return failures == 0 ? 0 : kExitComputation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, energies and incidence counts over F_p, with theorem-ratio sweeps"};
    app.footer(kFormats);
    app.require_subcommand(1);

    Common common;
    SetOptions set_a;
    SetOptions set_b;

    auto add_common = [&](CLI::App* cmd, bool need_p) {
        auto* opt = cmd->add_option("--p", common.p, "Prime modulus");
        if (need_p) opt->required();
        cmd->add_option("--seed", common.seed, "Seed for random sets and scenes")->capture_default_str();
        cmd->add_option("--out", common.out, "Machine-readable output file");
    };

    double eps = 0.5;
    std::string method = "fast";
    std::string table_out;
    auto* spectrum = app.add_subcommand("spectrum", "Spec_eps(A) and the Fourier table of A");
    add_common(spectrum, true);
    set_a.add(spectrum);
    spectrum->add_option("--eps", eps, "Threshold fraction in (0, 1]")->required();
    spectrum->add_option("--method", method, "Transform: direct or fast")
        ->check(CLI::IsMember({"direct", "fast"}))
        ->capture_default_str();
    spectrum->add_option("--table", table_out, "Write the full table as CSV xi,re,im,mag2");

    std::string kind = "additive";
    unsigned k = 2;
    std::string energy_method = "convolution";
    auto* energy = app.add_subcommand("energy", "Energies and representation functions");
    add_common(energy, true);
    set_a.add(energy);
    set_b.add(energy, "b-", "B (defaults to A)");
    energy->add_option("--kind", kind, "additive, difference, balanced, multiplicative, ratio, product, sigma, c4, aa")
        ->check(CLI::IsMember({"additive", "difference", "balanced", "multiplicative", "ratio", "product", "sigma",
                               "c4", "aa"}))
        ->capture_default_str();
    energy->add_option("--k", k, "Moment order for multiplicative energy (1..4)")->capture_default_str();
    energy->add_option("--method", energy_method, "brute, convolution or fourier")
        ->check(CLI::IsMember({"brute", "convolution", "fourier"}))
        ->capture_default_str();

    std::uint64_t d = 0;
    std::uint32_t lambda = 0;
    std::vector<double> sub_eps;
    auto* subgroup = app.add_subcommand("subgroup", "Multiplicative subgroups, cosets and their spectra");
    add_common(subgroup, true);
    subgroup->add_option("--d", d, "Subgroup order (divides p - 1)")->required();
    subgroup->add_option("--lambda", lambda, "Print the coset lambda H instead of H");
    subgroup->add_option("--eps", sub_eps, "Search a coset inside Spec_eps(H) \\ {0} for each value");

    IncidenceOptions inc;
    auto* incidence = app.add_subcommand("incidence", "Point-plane and point-line incidences");
    add_common(incidence, false);
    incidence->add_option("--scene", inc.scene, "Scene file");
    incidence->add_option("--random", inc.random, "Random scene: Q DIM POINTS SURFACES")->expected(4);
    incidence->add_option("--check", inc.check, "count, point_plane, misha, collinear or line_point")
        ->check(CLI::IsMember({"count", "point_plane", "misha", "collinear", "line_point"}))
        ->capture_default_str();
    incidence->add_flag("--swap-roles", inc.swap_roles, "misha: let surfaces play the role of points");
    incidence->add_option("--center", inc.center, "Redraw weights in [-1,1], centering points or surfaces")
        ->check(CLI::IsMember({"points", "surfaces"}));
    incidence->add_option("--lines", inc.lines, "line_point: file of 'a b d' lines (a x + b y = d)");
    set_a.add(incidence);
    set_b.add(incidence, "b-", "B");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "One theorem report row");
    add_common(verify, true);
    set_a.add(verify);
    verify->add_option("--theorem", vo.theorem, "main, e4, sigma, zero_sum, aa_plus_aa, example, misha, line_point, tightness")
        ->required()
        ->check(CLI::IsMember({"main", "e4", "sigma", "zero_sum", "aa_plus_aa", "example", "misha", "line_point",
                               "tightness"}));
    verify->add_option("--eps", vo.eps, "Spectrum threshold")->capture_default_str();
    verify->add_option("--rule", vo.rule, "How R is chosen: auto, full, coset or explicit")
        ->check(CLI::IsMember({"auto", "full", "coset", "explicit"}))
        ->capture_default_str();
    verify->add_option("--r", vo.r_list, "Explicit R as a comma list");
    verify->add_option("--jsonl", vo.jsonl, "Also write the row as JSON lines");

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Run the theorem battery and compare with a baseline");
    sweep->add_option("--config", so.config, "Config file (default battery when omitted)");
    sweep->add_option("--jobs", so.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--out", common.out, "CSV output (overrides the config's output key)");
    sweep->add_option("--jsonl", so.jsonl, "JSON-lines mirror of the CSV");
    sweep->add_option("--baseline", so.baseline, "Baseline JSON (overrides the config's baseline key)");
    sweep->add_flag("--bless", so.bless, "Write the baseline from this run instead of checking it");

    auto* selftest = app.add_subcommand("selftest", "Exact-identity battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n\n", e.what());
        const auto parsed = app.get_subcommands();
        std::fprintf(stderr, "%s", parsed.empty() ? app.help().c_str() : parsed.front()->help().c_str());
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(common, set_a, eps, method, table_out);
        if (energy->parsed()) return run_energy(common, set_a, set_b, kind, k, energy_method);
        if (subgroup->parsed()) return run_subgroup(common, d, lambda, sub_eps);
        if (incidence->parsed()) return run_incidence(common, inc, set_a, set_b);
        if (verify->parsed()) return run_verify(common, set_a, vo);
        if (sweep->parsed()) return run_sweep(common, so);
        if (selftest->parsed()) return run_selftest();
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n\n", e.what());
        std::fprintf(stderr, "%s", app.get_subcommands().front()->help().c_str());
        return kExitUsage;
    } catch (const ComputationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitComputation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitComputation;
    }
    return kExitUsage;
}
