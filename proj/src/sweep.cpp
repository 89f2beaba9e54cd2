#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "fpspec/error.hpp"
#include "fpspec/harness.hpp"
#include "json.hpp"

namespace fpspec {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool is_eps_theorem(const std::string& id) {
    return id == "main" || id == "e4" || id == "sigma" || id == "example";
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const std::vector<std::string>& known_theorems() {
    static const std::vector<std::string> ids{"main",    "e4",    "sigma",      "zero_sum",
                                              "aa_plus_aa", "example", "misha", "line_point"};
    return ids;
}

const std::vector<std::string>& known_families() {
    static const std::vector<std::string> ids{"interval", "random", "subgroup", "coset"};
    return ids;
}

std::uint64_t largest_divisor_at_most(std::uint64_t n, std::uint64_t target) {
    for (std::uint64_t d = std::min(n, target); d > 1; --d) {
        if (n % d == 0) return d;
    }
    return 1;
}

FpSet make_family(const PrimeField& field, const std::string& family, std::uint64_t seed,
                  double size_exponent) {
    const std::uint64_t p = field.p();
    const auto raw = std::llround(std::pow(static_cast<double>(p), size_exponent));
    const std::uint64_t n = std::clamp<std::uint64_t>(raw < 1 ? 1 : static_cast<std::uint64_t>(raw), 1, p - 1);
    if (family == "interval") return interval(field, n);
    if (family == "random") return random_set(field, n, seed, true);
    const std::uint64_t d = largest_divisor_at_most(p - 1, n);
    const FpSet h = mult_subgroup(field, d);
    if (family == "subgroup") return h;
    if (family == "coset") {
        Elem lam = 1;
        while (lam < p && h.contains(lam)) ++lam;
        return lam < p ? dilate(field, h, lam) : h;
    }
    fail(ErrorCode::InvalidArgument, "unknown family \"" + family + "\"");
}

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::Config, "config line " + std::to_string(lineno) + ": " + why);
        };
        if (eq == std::string::npos) bad("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto items = split_list(value);
        try {
            if (key == "primes") {
                cfg.primes.clear();
                for (const auto& it : items) {
                    const auto p = std::stoull(it);
                    if (p < 3 || !is_prime(p)) bad("\"" + it + "\" is not an odd prime");
                    if (p > PrimeField::kMaxModulus) bad("prime " + it + " is too large");
                    cfg.primes.push_back(p);
                }
            } else if (key == "families") {
                cfg.families.clear();
                for (const auto& it : items) {
                    const auto& known = known_families();
                    if (std::find(known.begin(), known.end(), it) == known.end()) {
                        bad("unknown family \"" + it + "\"");
                    }
                    cfg.families.push_back(it);
                }
            } else if (key == "eps") {
                cfg.eps.clear();
                for (const auto& it : items) {
                    const double e = std::stod(it);
                    if (!(e > 0.0 && e <= 1.0)) bad("eps " + it + " not in (0, 1]");
                    cfg.eps.push_back(e);
                }
            } else if (key == "seeds") {
                cfg.seeds.clear();
                for (const auto& it : items) cfg.seeds.push_back(std::stoull(it));
            } else if (key == "theorems") {
                cfg.theorems.clear();
                for (const auto& it : items) {
                    const auto& known = known_theorems();
                    if (std::find(known.begin(), known.end(), it) == known.end()) {
                        bad("unknown theorem \"" + it + "\"");
                    }
                    cfg.theorems.push_back(it);
                }
            } else if (key == "size_exponent") {
                cfg.size_exponent = std::stod(value);
                if (!(cfg.size_exponent > 0.0 && cfg.size_exponent <= 1.0)) {
                    bad("size_exponent not in (0, 1]");
                }
            } else if (key == "output") {
                cfg.output = value;
            } else if (key == "baseline") {
                cfg.baseline = value;
            } else {
                bad("unknown key \"" + key + "\"");
            }
        } catch (const std::logic_error&) {
            bad("unreadable value \"" + value + "\"");
        }
    }
    return cfg;
}

TheoremReport run_theorem(const std::string& theorem, const PrimeField& field, const FpSet& a,
                          const std::string& family, double eps, std::uint64_t seed) {
    const bool cosets = family == "subgroup" || family == "coset";
    const RRule rule = cosets ? RRule::CosetSearch : RRule::FullSpectrum;
    TheoremReport r;
    try {
        if (theorem == "main") {
            r = verify_main(field, a, eps, rule);
        } else if (theorem == "e4") {
            r = verify_e4(field, a, eps);
        } else if (theorem == "sigma") {
            r = verify_sigma(field, a, eps, rule);
        } else if (theorem == "zero_sum") {
            r = verify_zero_sum(field, a);
        } else if (theorem == "aa_plus_aa") {
            r = verify_aa_plus_aa(field, a);
        } else if (theorem == "example") {
            r = verify_example(field, a, eps);
        } else if (theorem == "misha") {
            r = verify_misha(field, a);
        } else if (theorem == "line_point") {
            r = verify_line_point(field, a);
        } else {
            fail(ErrorCode::InvalidArgument, "unknown theorem \"" + theorem + "\"");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw;
        r = TheoremReport{};
        r.theorem_id = theorem;
        r.p = field.p();
        r.set_size = a.size();
        r.delta = a.density();
        r.precondition_ok = false;
        r.ratio = std::numeric_limits<double>::quiet_NaN();
        r.ratio_log = r.ratio;
        r.notes = std::string("error ") + error_code_name(e.code()) + ": " + e.what();
    }
    r.family = family;
    r.seed = seed;
    r.eps = eps;
    return r;
}

std::vector<TheoremReport> run_sweep(const SweepConfig& config, unsigned jobs) {
    struct Instance {
        std::size_t prime_index;
        std::string family;
        std::uint64_t seed;
    };
    std::vector<PrimeField> fields;
    fields.reserve(config.primes.size());
    for (auto p : config.primes) fields.emplace_back(p);

    std::vector<Instance> instances;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (const auto& fam : config.families) {
            for (auto seed : config.seeds) instances.push_back({i, fam, seed});
        }
    }

    std::vector<std::vector<TheoremReport>> per_instance(instances.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= instances.size()) return;
            try {
                const auto& inst = instances[idx];
                const PrimeField& field = fields[inst.prime_index];
                const FpSet a = make_family(field, inst.family, inst.seed, config.size_exponent);
                auto& rows = per_instance[idx];
                for (const auto& th : config.theorems) {
                    for (double eps : config.eps) {
                        // eps-free theorems give identical rows across the eps grid;
                        // compute once and relabel.
                        if (!is_eps_theorem(th) && eps != config.eps.front()) {
                            TheoremReport copy = rows.back();
                            copy.eps = eps;
                            rows.push_back(std::move(copy));
                            continue;
                        }
                        rows.push_back(run_theorem(th, field, a, inst.family, eps, inst.seed));
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };

    const unsigned n_threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(instances.size())));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<TheoremReport> rows;
    for (auto& v : per_instance) {
        for (auto& r : v) rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const TheoremReport& x, const TheoremReport& y) {
        return std::tie(x.theorem_id, x.p, x.family, x.seed, x.eps) <
               std::tie(y.theorem_id, y.p, y.family, y.seed, y.eps);
    });
    return rows;
}

void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& rows) {
    out << "theorem,family,rule,p,seed,eps,set_size,delta,r_size,precondition_ok,lhs_exact,lhs,"
           "rhs,ratio,ratio_log,notes\n";
    for (const auto& r : rows) {
        out << r.theorem_id << ',' << r.family << ',' << r.rule << ',' << r.p << ',' << r.seed << ','
            << format_real(r.eps) << ',' << r.set_size << ',' << format_real(r.delta) << ','
            << r.r_size << ',' << (r.precondition_ok ? 1 : 0) << ','
            << (r.lhs_exact ? to_string(*r.lhs_exact) : std::string()) << ','
            << format_real(r.lhs) << ',' << format_real(r.rhs) << ',' << format_real(r.ratio)
            << ',' << format_real(r.ratio_log) << ',' << csv_escape(r.notes) << '\n';
    }
}

void write_reports_jsonl(std::ostream& out, const std::vector<TheoremReport>& rows) {
    for (const auto& r : rows) {
        out << "{\"theorem\":" << nlohmann::json(r.theorem_id).dump()
            << ",\"family\":" << nlohmann::json(r.family).dump()
            << ",\"rule\":" << nlohmann::json(r.rule).dump() << ",\"p\":" << r.p
            << ",\"seed\":" << r.seed << ",\"eps\":" << json_real(r.eps)
            << ",\"set_size\":" << r.set_size << ",\"delta\":" << json_real(r.delta)
            << ",\"r_size\":" << r.r_size
            << ",\"precondition_ok\":" << (r.precondition_ok ? "true" : "false")
            << ",\"lhs_exact\":" << (r.lhs_exact ? "\"" + to_string(*r.lhs_exact) + "\"" : "null")
            << ",\"lhs\":" << json_real(r.lhs) << ",\"rhs\":" << json_real(r.rhs)
            << ",\"ratio\":" << json_real(r.ratio) << ",\"ratio_log\":" << json_real(r.ratio_log)
            << ",\"notes\":" << nlohmann::json(r.notes).dump() << "}\n";
    }
}

RatioTable max_ratios(const std::vector<TheoremReport>& rows) {
    RatioTable table;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.theorem_id, r.family);
        auto it = table.find(key);
        if (it == table.end()) it = table.emplace(key, 0.0).first;
        if (!r.precondition_ok) continue;
        if (std::isnan(r.ratio) || r.ratio > it->second) it->second = r.ratio;
    }
    return table;
}

void write_baseline(std::ostream& out, const RatioTable& table) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : table) {
        if (!std::isfinite(value)) {
            fail(ErrorCode::Precondition, "cannot bless a non-finite ratio for " + key.first + "/" +
                                              key.second);
        }
        j[key.first][key.second] = std::stod(format_real(value));
    }
    out << j.dump(2) << '\n';
}

RatioTable read_baseline(std::istream& in) {
    RatioTable table;
    try {
        const auto j = nlohmann::json::parse(in);
        for (const auto& [theorem, families] : j.items()) {
            for (const auto& [family, value] : families.items()) {
                table[{theorem, family}] = value.get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Io, std::string("baseline file: ") + e.what());
    }
    return table;
}

double baseline_allowance(double b) { return b > 0.0 ? 2.0 * b : -b; }

std::vector<BaselineCheck> check_baseline(const RatioTable& observed, const RatioTable& baseline) {
    std::vector<BaselineCheck> out;
    for (const auto& [key, value] : observed) {
        BaselineCheck c;
        c.theorem = key.first;
        c.family = key.second;
        c.max_ratio = value;
        const auto it = baseline.find(key);
        if (it == baseline.end()) {
            c.pass = false;
            c.notes = "no baseline entry";
        } else {
            c.baseline = it->second;
            c.allowed = baseline_allowance(it->second);
            // Blessed values are stored with 12 significant digits.
            c.pass = std::isfinite(value) && value <= c.allowed + 1e-9 * std::abs(c.allowed) + 1e-300;
            if (!std::isfinite(value)) c.notes = "non-finite ratio";
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace fpspec
