#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <vector>

#include "fpspec/fp_set.hpp"
#include "fpspec/prime_field.hpp"

namespace fpspec {

using Point3 = std::array<Elem, 3>;

struct WeightedPoint {
    Point3 coords{};
    double weight = 1.0;
};

/// Plane n . x = offset in F_q^3, or line n[0] x + n[1] y = offset in F_q^2
/// (then n[2] = 0). Stored with the first nonzero normal coefficient scaled to 1.
struct WeightedSurface {
    Point3 normal{};
    Elem offset = 0;
    double weight = 1.0;
};

/// Points and planes (dim 3) or points and lines (dim 2) over F_q with real
/// weights. Duplicate points and projectively equal surfaces are rejected.
class IncidenceScene {
public:
    IncidenceScene(std::uint64_t q, unsigned dim);

    std::uint32_t q() const noexcept { return field_.p(); }
    unsigned dim() const noexcept { return dim_; }
    const PrimeField& field() const noexcept { return field_; }

    void add_point(Point3 coords, double weight = 1.0);
    /// Normalizes and appends; throws DuplicateElement on a repeat and
    /// InvalidArgument on a zero normal.
    void add_surface(Point3 normal, std::int64_t offset, double weight = 1.0);

    const std::vector<WeightedPoint>& points() const noexcept { return points_; }
    const std::vector<WeightedSurface>& surfaces() const noexcept { return surfaces_; }
    std::vector<WeightedPoint>& mutable_points() noexcept { return points_; }
    std::vector<WeightedSurface>& mutable_surfaces() noexcept { return surfaces_; }

    bool on(const WeightedPoint& pt, const WeightedSurface& s) const noexcept;

private:
    PrimeField field_;
    unsigned dim_;
    std::vector<WeightedPoint> points_;
    std::vector<WeightedSurface> surfaces_;
    std::set<Point3> point_keys_;
    std::set<std::array<Elem, 4>> surface_keys_;
};

/// sum over (point, surface) of I(point, surface) alpha(point) beta(surface),
/// accumulated in a fixed order.
double incidences(const IncidenceScene& scene);
/// Unweighted incidence count.
std::uint64_t incidence_count(const IncidenceScene& scene);

struct PointPlaneReport {
    double lhs = 0.0;  ///< |weighted incidences|
    double rhs = 0.0;  ///< q ||alpha||_2 ||beta||_2
    bool pass = false;
};

/// Checks |sum I alpha beta| <= q ||alpha|| ||beta||. Requires sum alpha = 0 or
/// sum beta = 0 within 1e-9 absolute (MeanZeroViolated otherwise).
PointPlaneReport check_point_plane(const IncidenceScene& scene);

inline constexpr std::size_t kCollinearMaxPoints = 20'000;

/// Largest number of points on one line, by hashing normalized directions
/// from each point. O(n^2 log n).
std::size_t collinear_max(const std::vector<Point3>& points, const PrimeField& field);

/// Same quantity by testing every triple for collinearity, O(n^3); the
/// reference for collinear_max.
std::size_t collinear_max_cubic(const std::vector<Point3>& points, const PrimeField& field);

/// Largest number of surfaces sharing a common line, counting a parallel
/// class as sharing its line at infinity. This is collinearity of the
/// surfaces viewed as points of the dual projective space.
std::size_t pencil_max(const IncidenceScene& scene);

struct MishaReport {
    std::uint64_t incidences = 0;
    std::size_t k = 0;  ///< max collinear points (or max pencil when swapped)
    double excess = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool swapped = false;
};

/// Unit-weight comparison of I(P, Pi) - |P||Pi|/q against |P|^{1/2}|Pi| + k|P|.
/// Requires |P| <= |Pi| unless swap_roles, in which case surfaces play the
/// role of points in the projective dual and k becomes pencil_max.
MishaReport misha_ratio(const IncidenceScene& scene, bool swap_roles = false);

struct Line2 {
    Elem a = 0;
    Elem b = 0;
    Elem d = 0;  ///< a x + b y = d
};

/// Normalizes and removes duplicates; rejects a = b = 0.
std::vector<Line2> normalize_lines(const PrimeField& field, const std::vector<Line2>& lines);

struct LinePointReport {
    std::uint64_t incidences = 0;
    double excess = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

/// I(A x B, L) - |A||B||L|/p against |A|^{3/4}|B|^{1/2}|L|^{3/4} + |L| + |A||B|.
/// Throws SizeOrder when |A| > |B|.
LinePointReport line_point_ratio(const PrimeField& field, const FpSet& a, const FpSet& b,
                                 const std::vector<Line2>& lines);

/// Scene with distinct uniformly random points and surfaces, unit weights.
IncidenceScene random_scene(std::uint64_t q, unsigned dim, std::size_t n_points,
                            std::size_t n_surfaces, std::uint64_t seed);

/// Redraws weights uniformly in [-1, 1] and recenters the chosen family to mean zero.
void randomize_weights(IncidenceScene& scene, std::uint64_t seed, bool center_points);

// Scene file: header "q=<q> dim=<2|3>", then "P x y [z] w" and "S a b [c] d w" lines.
IncidenceScene read_scene(std::istream& in);
void write_scene(std::ostream& out, const IncidenceScene& scene);

}  // namespace fpspec
