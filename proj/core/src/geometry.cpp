#include "equitile/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace equitile {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NonSimplePolygon: return "NonSimplePolygon";
        case ErrorKind::DegenerateVertex: return "DegenerateVertex";
        case ErrorKind::NotCounterClockwise: return "NotCounterClockwise";
        case ErrorKind::InvalidAngle: return "InvalidAngle";
        case ErrorKind::AngleSumMismatch: return "AngleSumMismatch";
        case ErrorKind::ClosureFailure: return "ClosureFailure";
        case ErrorKind::WrongArity: return "WrongArity";
        case ErrorKind::UnknownType: return "UnknownType";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::NonConvexSolution: return "NonConvexSolution";
        case ErrorKind::EmptyFamily: return "EmptyFamily";
        case ErrorKind::InvalidPolygon: return "InvalidPolygon";
        case ErrorKind::MalformedPatch: return "MalformedPatch";
        case ErrorKind::EmptyPatch: return "EmptyPatch";
        case ErrorKind::ConstructionFailure: return "ConstructionFailure";
    }
    return "Unknown";
}

void TolerancePolicy::validate() const {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(tol_angle) || !positive(tol_closure) || !positive(tol_geom) ||
        !positive(tol_classify)) {
        throw Error(ErrorKind::InvalidInput, "tolerances must be finite and strictly positive");
    }
    if (tol_classify < tol_angle) {
        throw Error(ErrorKind::InvalidInput, "tol_classify must not be smaller than tol_angle");
    }
}

double signed_area(std::span<const Point2> pts) {
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        twice += cross(pts[i], pts[(i + 1) % pts.size()]);
    }
    return 0.5 * twice;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d, double eps) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))) {
        return true;
    }
    return point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps ||
           point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps;
}

namespace {

void check_simple(const PolygonVertices& p, const TolerancePolicy& tol) {
    const std::size_t n = p.size();
    if (n < 3) {
        throw Error(ErrorKind::InvalidPolygon, "a polygon needs at least 3 vertices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(p[i].x) || !std::isfinite(p[i].y)) {
            throw Error(ErrorKind::InvalidInput, "non-finite vertex coordinate");
        }
        if (distance(p[i], p[(i + 1) % n]) <= tol.tol_geom) {
            std::ostringstream os;
            os << "vertices " << i << " and " << (i + 1) % n << " coincide";
            throw Error(ErrorKind::DegenerateVertex, os.str());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_touch(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n], tol.tol_geom)) {
                std::ostringstream os;
                os << "edges " << i << " and " << j << " intersect";
                throw Error(ErrorKind::NonSimplePolygon, os.str());
            }
        }
    }
    if (signed_area(p.vertices) <= 0.0) {
        throw Error(ErrorKind::NotCounterClockwise, "vertices must be ordered counterclockwise");
    }
}

}  // namespace

std::vector<double> interior_angles(const PolygonVertices& p, const TolerancePolicy& tol) {
    check_simple(p, tol);
    const std::size_t n = p.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 in = p[i] - p[(i + n - 1) % n];
        const Point2 outgoing = p[(i + 1) % n] - p[i];
        const double turn = std::atan2(cross(in, outgoing), dot(in, outgoing));
        out[i] = kPi - turn;
    }
    return out;
}

bool is_strictly_convex(const PolygonVertices& p, const TolerancePolicy& tol) {
    const auto angles = interior_angles(p, tol);
    return std::all_of(angles.begin(), angles.end(), [&](double a) {
        return a > tol.tol_angle && a < kPi - tol.tol_angle;
    });
}

std::vector<double> edge_lengths(const PolygonVertices& p) {
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = distance(p[i], p[(i + 1) % p.size()]);
    }
    return out;
}

bool is_equilateral(const PolygonVertices& p, const TolerancePolicy& tol) {
    check_simple(p, tol);
    const auto lengths = edge_lengths(p);
    const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
    return *hi - *lo <= tol.tol_geom;
}

Point2 walk_residual(std::span<const double> angles) {
    Point2 pos{};
    double heading = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (i > 0) heading += kPi - angles[i];
        pos = pos + unit_vector(heading);
    }
    return pos;
}

PolygonVertices close_equilateral(std::span<const double> angles, const TolerancePolicy& tol) {
    const std::size_t n = angles.size();
    if (n < 3) {
        throw Error(ErrorKind::InvalidInput, "a polygon needs at least 3 angles");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(angles[i])) {
            throw Error(ErrorKind::InvalidInput, "non-finite angle");
        }
        if (angles[i] <= 0.0 || angles[i] >= kPi) {
            std::ostringstream os;
            os << "angle " << i << " = " << rad_to_deg(angles[i]) << " deg is outside (0, 180)";
            throw Error(ErrorKind::InvalidAngle, os.str());
        }
    }
    const double sum = std::accumulate(angles.begin(), angles.end(), 0.0);
    const double expected = static_cast<double>(n - 2) * kPi;
    if (std::abs(sum - expected) > tol.tol_angle) {
        std::ostringstream os;
        os << "angle sum " << rad_to_deg(sum) << " deg, expected " << rad_to_deg(expected) << " deg";
        throw Error(ErrorKind::AngleSumMismatch, os.str());
    }

    PolygonVertices out;
    out.vertices.reserve(n);
    Point2 pos{};
    double heading = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) heading += kPi - angles[i];
        out.vertices.push_back(pos);
        pos = pos + unit_vector(heading);
    }
    if (norm(pos) > tol.tol_closure) {
        std::ostringstream os;
        os.precision(3);
        os << "unit-edge walk misses its start by (" << pos.x << ", " << pos.y << ")";
        throw ClosureError(pos.x, pos.y, os.str());
    }
    return out;
}

EquilateralPolygon::EquilateralPolygon(std::vector<double> angles, const TolerancePolicy& tol)
    : angles_(std::move(angles)), vertices_(close_equilateral(angles_, tol)) {}

EquilateralPolygon EquilateralPolygon::from_vertices(const PolygonVertices& p,
                                                     const TolerancePolicy& tol) {
    auto angles = interior_angles(p, tol);
    if (!is_equilateral(p, tol)) {
        throw Error(ErrorKind::InvalidPolygon, "edges are not all of equal length");
    }
    return EquilateralPolygon(std::move(angles), tol);
}

std::vector<double> relabel(std::span<const double> angles, std::size_t shift, bool reflected) {
    const std::size_t n = angles.size();
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = reflected ? (shift + n - k % n) % n : (shift + k) % n;
        out[k] = angles[src];
    }
    return out;
}

}  // namespace equitile
