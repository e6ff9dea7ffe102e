#pragma once

#include <cstddef>
#include <vector>

#include "equitile/geometry.hpp"

namespace equitile {

/// One copy of a prototile. Local vertex k sits at
/// rotate(mirror(q_k), angle) + translation, where q_k is the prototile's
/// unit-edge realization and mirror flips y when `reflected` is set. Edge k
/// joins local vertices k and k+1; reflected copies therefore list their
/// vertices clockwise.
struct PlacedTile {
    std::size_t proto = 0;
    double angle = 0.0;
    Point2 translation{};
    bool reflected = false;
    int ring = 0;
};

/// Edge `edge_a` of tile `tile_a` coincides with edge `edge_b` of `tile_b`.
struct Adjacency {
    std::size_t tile_a = 0;
    std::size_t edge_a = 0;
    std::size_t tile_b = 0;
    std::size_t edge_b = 0;

    friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

struct Patch {
    std::vector<EquilateralPolygon> prototiles;
    std::vector<PlacedTile> tiles;
    std::vector<Adjacency> adjacency;
};

/// Vertices of a placed tile in local order.
std::vector<Point2> placed_vertices(const Patch& patch, std::size_t tile);

/// Vertices of a placed tile in counterclockwise order.
std::vector<Point2> placed_polygon_ccw(const Patch& patch, std::size_t tile);

/// Order-independent description of the tiles' footprints: every tile as its
/// sorted, rounded vertex list, the whole list sorted. Two patches covering
/// the same tiles compare equal.
std::vector<std::vector<std::pair<long long, long long>>> canonical_form(const Patch& patch,
                                                                         double quantum = 1e-6);

/// Largest distance between any tile of `patch` rotated by `angle` about the
/// origin and its closest tile in the unrotated patch (Hausdorff distance of
/// vertex sets).
double rotation_symmetry_error(const Patch& patch, double angle);

}  // namespace equitile
