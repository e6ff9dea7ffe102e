#include "equitile/shape_space.hpp"

#include <algorithm>

namespace equitile {

std::optional<Point2> unit_apex(Point2 p, Point2 q) {
    const Point2 d = q - p;
    const double len = norm(d);
    if (len > 2.0 + 1e-12 || len < 1e-12) return std::nullopt;
    const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * len * len));
    const Point2 right{d.y / len, -d.x / len};
    return 0.5 * (p + q) + h * right;
}

namespace {

template <std::size_t N>
std::array<double, N> angles_of(const std::array<Point2, N>& v) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        const Point2 in = v[i] - v[(i + N - 1) % N];
        const Point2 outgoing = v[(i + 1) % N] - v[i];
        out[i] = kPi - std::atan2(cross(in, outgoing), dot(in, outgoing));
    }
    return out;
}

template <std::size_t N>
std::array<double, N> rotate_labels(const std::array<double, N>& chart_angles, std::size_t anchor) {
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[(anchor + k) % N] = chart_angles[k];
    return out;
}

}  // namespace

std::optional<PentagonChart> pentagon_chart(double angle0, double angle1) {
    PentagonChart c;
    c.vertices[0] = {0.0, 0.0};
    c.vertices[1] = {1.0, 0.0};
    c.vertices[4] = unit_vector(angle0);
    c.vertices[2] = c.vertices[1] + unit_vector(kPi - angle1);
    const auto apex = unit_apex(c.vertices[2], c.vertices[4]);
    if (!apex) return std::nullopt;
    c.vertices[3] = *apex;
    c.angles = angles_of(c.vertices);
    return c;
}

std::optional<std::array<double, 5>> pentagon_angles_at(std::size_t anchor, double angle_anchor,
                                                        double angle_next) {
    const auto c = pentagon_chart(angle_anchor, angle_next);
    if (!c) return std::nullopt;
    return rotate_labels(c->angles, anchor % 5);
}

std::optional<HexagonChart> hexagon_chart(double angle0, double angle1, double angle2) {
    HexagonChart c;
    c.vertices[0] = {0.0, 0.0};
    c.vertices[1] = {1.0, 0.0};
    c.vertices[5] = unit_vector(angle0);
    const double heading12 = kPi - angle1;
    c.vertices[2] = c.vertices[1] + unit_vector(heading12);
    c.vertices[3] = c.vertices[2] + unit_vector(heading12 + kPi - angle2);
    const auto apex = unit_apex(c.vertices[3], c.vertices[5]);
    if (!apex) return std::nullopt;
    c.vertices[4] = *apex;
    c.angles = angles_of(c.vertices);
    return c;
}

std::optional<std::array<double, 6>> hexagon_angles_at(std::size_t anchor, double angle_anchor,
                                                       double angle_next, double angle_next2) {
    const auto c = hexagon_chart(angle_anchor, angle_next, angle_next2);
    if (!c) return std::nullopt;
    return rotate_labels(c->angles, anchor % 6);
}

}  // namespace equitile
