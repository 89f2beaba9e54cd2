#include "fpspec/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "fpspec/error.hpp"
#include "rng.hpp"

namespace fpspec {

namespace {

using Row4 = std::array<Elem, 4>;

// Reduced row echelon form of the 2x4 matrix [u; v] over F_q. The result
// depends only on span(u, v), so it keys lines of the projective space.
std::array<Elem, 8> span_key(const PrimeField& f, Row4 u, Row4 v) {
    std::array<Row4, 2> m{u, v};
    std::size_t row = 0;
    for (std::size_t col = 0; col < 4 && row < 2; ++col) {
        std::size_t pivot = row;
        while (pivot < 2 && m[pivot][col] == 0) ++pivot;
        if (pivot == 2) continue;
        std::swap(m[row], m[pivot]);
        const Elem inv = f.inv(m[row][col]);
        for (auto& x : m[row]) x = f.mul(x, inv);
        for (std::size_t other = 0; other < 2; ++other) {
            if (other == row || m[other][col] == 0) continue;
            const Elem factor = m[other][col];
            for (std::size_t c = 0; c < 4; ++c) {
                m[other][c] = f.sub(m[other][c], f.mul(factor, m[row][c]));
            }
        }
        ++row;
    }
    return {m[0][0], m[0][1], m[0][2], m[0][3], m[1][0], m[1][1], m[1][2], m[1][3]};
}

template <std::size_t N>
std::array<Elem, N> normalize_leading(const PrimeField& f, std::array<Elem, N> v,
                                      std::size_t lead_span) {
    for (std::size_t i = 0; i < lead_span; ++i) {
        if (v[i] == 0) continue;
        const Elem inv = f.inv(v[i]);
        for (auto& x : v) x = f.mul(x, inv);
        break;
    }
    return v;
}

std::uint64_t int_pow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

}  // namespace

IncidenceScene::IncidenceScene(std::uint64_t q, unsigned dim) : field_(q), dim_(dim) {
    if (dim != 2 && dim != 3) fail(ErrorCode::InvalidArgument, "scene dimension must be 2 or 3");
}

void IncidenceScene::add_point(Point3 coords, double weight) {
    if (!std::isfinite(weight)) fail(ErrorCode::InvalidArgument, "point weight is not finite");
    for (auto& c : coords) c %= field_.p();
    if (dim_ == 2) coords[2] = 0;
    if (!point_keys_.insert(coords).second) {
        fail(ErrorCode::DuplicateElement, "duplicate point in scene");
    }
    points_.push_back({coords, weight});
}

void IncidenceScene::add_surface(Point3 normal, std::int64_t offset, double weight) {
    if (!std::isfinite(weight)) fail(ErrorCode::InvalidArgument, "surface weight is not finite");
    for (auto& c : normal) c %= field_.p();
    if (dim_ == 2) normal[2] = 0;
    if (normal[0] == 0 && normal[1] == 0 && normal[2] == 0) {
        fail(ErrorCode::InvalidArgument, "surface has a zero normal vector");
    }
    const Row4 key = normalize_leading<4>(
        field_, {normal[0], normal[1], normal[2], field_.reduce(offset)}, 3);
    if (!surface_keys_.insert(key).second) {
        fail(ErrorCode::DuplicateElement, "duplicate surface after normalization");
    }
    surfaces_.push_back({{key[0], key[1], key[2]}, key[3], weight});
}

bool IncidenceScene::on(const WeightedPoint& pt, const WeightedSurface& s) const noexcept {
    const std::uint64_t q = field_.p();
    std::uint64_t lhs = 0;
    for (std::size_t i = 0; i < 3; ++i) lhs += static_cast<std::uint64_t>(s.normal[i]) * pt.coords[i];
    return lhs % q == s.offset;
}

double incidences(const IncidenceScene& scene) {
    double total = 0.0;
    for (const auto& s : scene.surfaces()) {
        double row = 0.0;
        for (const auto& pt : scene.points()) {
            if (scene.on(pt, s)) row += pt.weight;
        }
        total += row * s.weight;
    }
    return total;
}

std::uint64_t incidence_count(const IncidenceScene& scene) {
    std::uint64_t total = 0;
    for (const auto& s : scene.surfaces()) {
        for (const auto& pt : scene.points()) total += scene.on(pt, s) ? 1 : 0;
    }
    return total;
}

PointPlaneReport check_point_plane(const IncidenceScene& scene) {
    double sum_a = 0.0, norm_a = 0.0, sum_b = 0.0, norm_b = 0.0;
    for (const auto& pt : scene.points()) {
        sum_a += pt.weight;
        norm_a += pt.weight * pt.weight;
    }
    for (const auto& s : scene.surfaces()) {
        sum_b += s.weight;
        norm_b += s.weight * s.weight;
    }
    if (std::abs(sum_a) > 1e-9 && std::abs(sum_b) > 1e-9) {
        fail(ErrorCode::MeanZeroViolated, "neither the point nor the surface weights sum to zero");
    }
    PointPlaneReport r;
    r.lhs = std::abs(incidences(scene));
    r.rhs = static_cast<double>(scene.q()) * std::sqrt(norm_a) * std::sqrt(norm_b);
    r.pass = r.lhs <= r.rhs * (1.0 + 1e-9);
    return r;
}

std::size_t collinear_max(const std::vector<Point3>& points, const PrimeField& field) {
    if (points.size() > kCollinearMaxPoints) {
        fail(ErrorCode::TooLargeForBrute, "collinear_max limited to " +
                                              std::to_string(kCollinearMaxPoints) + " points");
    }
    if (points.size() <= 2) return points.size();
    std::size_t best = 1;
    std::vector<Point3> dirs;
    dirs.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        dirs.clear();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            Point3 d{};
            for (std::size_t c = 0; c < 3; ++c) d[c] = field.sub(points[j][c], points[i][c]);
            dirs.push_back(normalize_leading<3>(field, d, 3));
        }
        std::sort(dirs.begin(), dirs.end());
        for (std::size_t a = 0; a < dirs.size();) {
            std::size_t b = a;
            while (b < dirs.size() && dirs[b] == dirs[a]) ++b;
            best = std::max(best, b - a + 1);
            a = b;
        }
    }
    return best;
}

std::size_t collinear_max_cubic(const std::vector<Point3>& points, const PrimeField& field) {
    const std::size_t n = points.size();
    if (n <= 2) return n;
    auto diff = [&](const Point3& u, const Point3& v) {
        return Point3{field.sub(u[0], v[0]), field.sub(u[1], v[1]), field.sub(u[2], v[2])};
    };
    // u, v, w collinear iff (v - u) x (w - u) = 0.
    auto collinear = [&](const Point3& u, const Point3& v, const Point3& w) {
        const Point3 a = diff(v, u);
        const Point3 b = diff(w, u);
        return field.mul(a[1], b[2]) == field.mul(a[2], b[1]) &&
               field.mul(a[2], b[0]) == field.mul(a[0], b[2]) &&
               field.mul(a[0], b[1]) == field.mul(a[1], b[0]);
    };
    std::size_t best = 2;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t on_line = 2;
            for (std::size_t l = 0; l < n; ++l) {
                if (l != i && l != j && collinear(points[i], points[j], points[l])) ++on_line;
            }
            best = std::max(best, on_line);
        }
    }
    return best;
}

std::size_t pencil_max(const IncidenceScene& scene) {
    const auto& surf = scene.surfaces();
    if (surf.size() > kCollinearMaxPoints) {
        fail(ErrorCode::TooLargeForBrute, "pencil_max limited to " +
                                              std::to_string(kCollinearMaxPoints) + " surfaces");
    }
    if (surf.size() <= 2) return surf.size();
    const PrimeField& f = scene.field();
    auto homogeneous = [&](const WeightedSurface& s) {
        return Row4{s.normal[0], s.normal[1], s.normal[2], f.neg(s.offset)};
    };
    std::size_t best = 1;
    std::vector<std::array<Elem, 8>> keys;
    for (std::size_t i = 0; i < surf.size(); ++i) {
        keys.clear();
        for (std::size_t j = 0; j < surf.size(); ++j) {
            if (j != i) keys.push_back(span_key(f, homogeneous(surf[i]), homogeneous(surf[j])));
        }
        std::sort(keys.begin(), keys.end());
        for (std::size_t a = 0; a < keys.size();) {
            std::size_t b = a;
            while (b < keys.size() && keys[b] == keys[a]) ++b;
            best = std::max(best, b - a + 1);
            a = b;
        }
    }
    return best;
}

MishaReport misha_ratio(const IncidenceScene& scene, bool swap_roles) {
    const double n_pts = static_cast<double>(scene.points().size());
    const double n_surf = static_cast<double>(scene.surfaces().size());
    if (n_pts > n_surf && !swap_roles) {
        fail(ErrorCode::Precondition, "|P| > |Pi|: pass the duality flag to swap roles");
    }
    MishaReport r;
    r.swapped = swap_roles;
    r.incidences = incidence_count(scene);
    r.excess = static_cast<double>(r.incidences) - n_pts * n_surf / scene.q();
    if (swap_roles) {
        r.k = pencil_max(scene);
        r.bound = std::sqrt(n_surf) * n_pts + static_cast<double>(r.k) * n_surf;
    } else {
        std::vector<Point3> pts;
        for (const auto& p : scene.points()) pts.push_back(p.coords);
        r.k = collinear_max(pts, scene.field());
        r.bound = std::sqrt(n_pts) * n_surf + static_cast<double>(r.k) * n_pts;
    }
    r.ratio = r.bound > 0.0 ? r.excess / r.bound : 0.0;
    return r;
}

std::vector<Line2> normalize_lines(const PrimeField& field, const std::vector<Line2>& lines) {
    std::set<std::array<Elem, 3>> seen;
    std::vector<Line2> out;
    for (const auto& l : lines) {
        std::array<Elem, 3> v{l.a % field.p(), l.b % field.p(), l.d % field.p()};
        if (v[0] == 0 && v[1] == 0) fail(ErrorCode::InvalidArgument, "line with a = b = 0");
        v = normalize_leading<3>(field, v, 2);
        if (seen.insert(v).second) out.push_back({v[0], v[1], v[2]});
    }
    return out;
}

LinePointReport line_point_ratio(const PrimeField& field, const FpSet& a, const FpSet& b,
                                 const std::vector<Line2>& lines) {
    if (a.size() > b.size()) fail(ErrorCode::SizeOrder, "|A| > |B|");
    const auto norm = normalize_lines(field, lines);
    LinePointReport r;
    for (const auto& l : norm) {
        if (l.b == 0) {
            // vertical: x = d / a
            if (a.contains(field.div(l.d, l.a))) r.incidences += b.size();
            continue;
        }
        const Elem inv_b = field.inv(l.b);
        for (Elem x : a.elements()) {
            const Elem y = field.mul(field.sub(l.d, field.mul(l.a, x)), inv_b);
            if (b.contains(y)) ++r.incidences;
        }
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double nl = static_cast<double>(norm.size());
    r.excess = static_cast<double>(r.incidences) - na * nb * nl / field.p();
    r.bound = std::pow(na, 0.75) * std::sqrt(nb) * std::pow(nl, 0.75) + nl + na * nb;
    r.ratio = r.bound > 0.0 ? r.excess / r.bound : 0.0;
    return r;
}

IncidenceScene random_scene(std::uint64_t q, unsigned dim, std::size_t n_points,
                            std::size_t n_surfaces, std::uint64_t seed) {
    IncidenceScene scene(q, dim);
    const std::uint64_t total_points = int_pow(q, dim);
    const std::uint64_t total_surfaces = (int_pow(q, dim) - 1) / (q - 1) * q;
    if (n_points > total_points || n_surfaces > total_surfaces) {
        fail(ErrorCode::OutOfRange, "random_scene: more points or surfaces than exist");
    }
    std::mt19937_64 rng(seed);
    auto coord = [&] { return static_cast<Elem>(detail::bounded(rng, q)); };
    std::set<Point3> used_points;
    while (scene.points().size() < n_points) {
        Point3 pt{coord(), coord(), dim == 3 ? coord() : Elem{0}};
        if (used_points.insert(pt).second) scene.add_point(pt);
    }
    const PrimeField& f = scene.field();
    std::set<std::array<Elem, 4>> used_surfaces;
    while (scene.surfaces().size() < n_surfaces) {
        Point3 n{coord(), coord(), dim == 3 ? coord() : Elem{0}};
        const Elem d = coord();
        if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
        const auto key = normalize_leading<4>(f, {n[0], n[1], n[2], d}, 3);
        if (used_surfaces.insert(key).second) scene.add_surface(n, d);
    }
    return scene;
}

void randomize_weights(IncidenceScene& scene, std::uint64_t seed, bool center_points) {
    std::mt19937_64 rng(seed);
    auto draw = [&] { return 2.0 * detail::unit_double(rng) - 1.0; };
    for (auto& pt : scene.mutable_points()) pt.weight = draw();
    for (auto& s : scene.mutable_surfaces()) s.weight = draw();
    auto center = [](auto& items) {
        if (items.empty()) return;
        double mean = 0.0;
        for (const auto& it : items) mean += it.weight;
        mean /= static_cast<double>(items.size());
        for (auto& it : items) it.weight -= mean;
    };
    if (center_points) {
        center(scene.mutable_points());
    } else {
        center(scene.mutable_surfaces());
    }
}

IncidenceScene read_scene(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::unique_ptr<IncidenceScene> scene;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::Io, "scene file line " + std::to_string(lineno) + ": " + why);
        };
        if (!scene) {
            std::string dim_tok;
            if (tag.rfind("q=", 0) != 0 || !(ls >> dim_tok) || dim_tok.rfind("dim=", 0) != 0) {
                bad("expected header \"q=<q> dim=<2|3>\"");
            }
            try {
                scene = std::make_unique<IncidenceScene>(std::stoull(tag.substr(2)),
                                                         static_cast<unsigned>(std::stoul(dim_tok.substr(4))));
            } catch (const std::logic_error&) {
                bad("unreadable header");
            }
            continue;
        }
        const unsigned dim = scene->dim();
        std::vector<std::int64_t> ints(dim + (tag == "S" ? 1 : 0));
        double w = 0.0;
        for (auto& v : ints) {
            if (!(ls >> v)) bad("missing coordinate");
        }
        if (!(ls >> w)) bad("missing weight");
        std::string extra;
        if (ls >> extra) bad("trailing token \"" + extra + "\"");
        const PrimeField& f = scene->field();
        if (tag == "P") {
            scene->add_point({f.reduce(ints[0]), f.reduce(ints[1]), dim == 3 ? f.reduce(ints[2]) : Elem{0}}, w);
        } else if (tag == "S") {
            scene->add_surface({f.reduce(ints[0]), f.reduce(ints[1]), dim == 3 ? f.reduce(ints[2]) : Elem{0}},
                               ints[dim], w);
        } else {
            bad("unknown record \"" + tag + "\"");
        }
    }
    if (!scene) fail(ErrorCode::Io, "scene file: missing header");
    return std::move(*scene);
}

void write_scene(std::ostream& out, const IncidenceScene& scene) {
    out << "q=" << scene.q() << " dim=" << scene.dim() << '\n';
    char buf[64];
    for (const auto& pt : scene.points()) {
        out << "P " << pt.coords[0] << ' ' << pt.coords[1];
        if (scene.dim() == 3) out << ' ' << pt.coords[2];
        std::snprintf(buf, sizeof buf, " %.17g\n", pt.weight);
        out << buf;
    }
    for (const auto& s : scene.surfaces()) {
        out << "S " << s.normal[0] << ' ' << s.normal[1];
        if (scene.dim() == 3) out << ' ' << s.normal[2];
        std::snprintf(buf, sizeof buf, " %u %.17g\n", s.offset, s.weight);
        out << buf;
    }
}

}  // namespace fpspec
