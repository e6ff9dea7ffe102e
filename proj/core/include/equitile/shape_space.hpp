#pragma once

#include <array>
#include <optional>

#include "equitile/geometry.hpp"

namespace equitile {

// Charts on the shape spaces of unit-edge pentagons (2 parameters) and
// hexagons (3 parameters). Vertex 0 sits at the origin, edge 0 runs along +x
// and the given interior angles fix every vertex but one; the last vertex is
// the intersection of two unit circles on the side away from the polygon
// interior. The result is nullopt when those circles do not meet.
//
// Returned angles may lie outside (0, pi); callers filter for convexity.

struct PentagonChart {
    std::array<Point2, 5> vertices;
    std::array<double, 5> angles;
};

struct HexagonChart {
    std::array<Point2, 6> vertices;
    std::array<double, 6> angles;
};

/// Point at unit distance from both p and q, to the right of the directed
/// chord p -> q; nullopt when the chord is longer than 2.
std::optional<Point2> unit_apex(Point2 p, Point2 q);

std::optional<PentagonChart> pentagon_chart(double angle0, double angle1);

/// Same chart with the two free angles placed at vertices `anchor` and
/// `anchor + 1` (mod 5); angles are reported in that labeling.
std::optional<std::array<double, 5>> pentagon_angles_at(std::size_t anchor, double angle_anchor,
                                                        double angle_next);

std::optional<HexagonChart> hexagon_chart(double angle0, double angle1, double angle2);

std::optional<std::array<double, 6>> hexagon_angles_at(std::size_t anchor, double angle_anchor,
                                                       double angle_next, double angle_next2);

/// True if every angle lies in (margin, pi - margin) and the angles sum to
/// (N - 2) pi, which rules out self-overlapping star shapes.
template <std::size_t N>
bool convex_with_margin(const std::array<double, N>& angles, double margin) {
    double sum = 0.0;
    for (double a : angles) {
        if (!(a > margin && a < kPi - margin)) return false;
        sum += a;
    }
    return std::abs(sum - static_cast<double>(N - 2) * kPi) < 1e-6;
}

}  // namespace equitile
