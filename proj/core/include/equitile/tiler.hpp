#pragma once

#include <cstddef>
#include <vector>

#include "equitile/geometry.hpp"
#include "equitile/patch.hpp"

namespace equitile {

/// A way to fill the full angle around a vertex with corners of one
/// prototile. Corners with equal angles are merged into one class; each entry
/// holds the smallest vertex label of its class, so {0, 0, 1} reads "two
/// corners shaped like A, one like B". `reflected` marks entries that come
/// from mirrored copies; enumeration reports unreflected entries only since a
/// mirrored corner has the same angle.
struct VertexFigure {
    struct Entry {
        std::size_t label = 0;
        bool reflected = false;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;
    double total = 0.0;

    std::vector<std::size_t> labels() const;
};

/// All multisets of at least three and at most `max_entries` corner classes
/// whose angles add up to 2pi within tol_classify. Sorted by size, then
/// lexicographically by label.
std::vector<VertexFigure> vertex_figures(const EquilateralPolygon& p, const TolerancePolicy& tol = {},
                                         std::size_t max_entries = 8);

enum class GrowStatus { Success, Exhausted, Budget };

std::string_view to_string(GrowStatus status);

struct GrowOptions {
    std::size_t node_budget = 10'000'000;  ///< placements before giving up
    double merge_distance = 1e-6;          ///< vertices closer than this coincide
    double overlap_slack = 1e-7;           ///< projection overlap tolerated by the collision test
};

struct GrowResult {
    GrowStatus status = GrowStatus::Exhausted;
    Patch patch;  ///< empty unless status is Success
    std::size_t placements = 0;

    bool ok() const { return status == GrowStatus::Success; }
};

/// Grows an edge-to-edge patch around a seed copy of `p` (tile 0, identity
/// transform) until every tile within `rings - 1` adjacency steps of the seed
/// has all of its vertices complete.
///
/// Search order: each step looks at every incomplete vertex of a tile that
/// must be completed, lists the placements that survive the collision and
/// vertex-angle checks, and branches on the vertex with the fewest (ties go to
/// the oldest vertex). Placements always fill the gap next to the first open
/// edge counterclockwise around the vertex and are tried by ascending edge
/// index of the new tile, unreflected before reflected.
GrowResult grow_patch(const EquilateralPolygon& p, int rings, bool allow_reflections = true,
                      const TolerancePolicy& tol = {}, const GrowOptions& options = {});

}  // namespace equitile
