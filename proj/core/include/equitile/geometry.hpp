#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "equitile/errors.hpp"

namespace equitile {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2, Point2) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 rotate(Point2 p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Tolerances used by every predicate and solver. Defaults suit constructed
/// polygons; classification of measured input uses the looser tol_classify.
struct TolerancePolicy {
    double tol_angle = 1e-9;
    double tol_closure = 1e-9;
    double tol_geom = 1e-9;
    double tol_classify = 1e-6;

    /// Throws InvalidInput unless all values are positive and
    /// tol_classify >= tol_angle.
    void validate() const;
};

/// Counterclockwise vertex list. Invariants are checked by the operations that
/// consume it, not on construction.
struct PolygonVertices {
    std::vector<Point2> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point2& operator[](std::size_t i) const { return vertices[i]; }
};

double signed_area(std::span<const Point2> pts);

/// Interior angle at every vertex of a simple counterclockwise polygon.
/// Reflex vertices report angles above pi.
std::vector<double> interior_angles(const PolygonVertices& p, const TolerancePolicy& tol = {});

bool is_strictly_convex(const PolygonVertices& p, const TolerancePolicy& tol = {});
bool is_equilateral(const PolygonVertices& p, const TolerancePolicy& tol = {});

/// Edge lengths, edge i running from vertex i to vertex i+1.
std::vector<double> edge_lengths(const PolygonVertices& p);

/// Realizes an interior-angle sequence as a unit-edge polygon: vertex 0 at the
/// origin, edge 0 along +x, turning by the exterior angle at each vertex.
PolygonVertices close_equilateral(std::span<const double> angles, const TolerancePolicy& tol = {});

/// Closure residual of the unit-edge walk without any validation.
Point2 walk_residual(std::span<const double> angles);

/// A strictly convex unit-edge polygon described by its interior angles in
/// counterclockwise order. Construction validates the shape.
class EquilateralPolygon {
public:
    /// Validates angle range, angle sum and closure.
    explicit EquilateralPolygon(std::vector<double> angles, const TolerancePolicy& tol = {});

    /// Measures the angles of a concrete polygon. Any common edge length is
    /// accepted; the result is the similar unit-edge polygon.
    static EquilateralPolygon from_vertices(const PolygonVertices& p, const TolerancePolicy& tol = {});

    std::size_t size() const { return angles_.size(); }
    const std::vector<double>& angles() const { return angles_; }
    double angle(std::size_t i) const { return angles_[i]; }
    const PolygonVertices& vertices() const { return vertices_; }

private:
    std::vector<double> angles_;
    PolygonVertices vertices_;
};

/// Angles of the polygon under a relabeling: rotation by `shift` and optional
/// reflection (reversal of the vertex order).
std::vector<double> relabel(std::span<const double> angles, std::size_t shift, bool reflected);

/// Smallest distance from `p` to segment [a, b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// True if closed segments [a,b] and [c,d] share a point (within eps).
bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d, double eps);

}  // namespace equitile
