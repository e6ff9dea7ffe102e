#pragma once

#include <cstddef>

#include "equitile/geometry.hpp"
#include "equitile/patch.hpp"

namespace equitile {

struct PatchReport {
    double max_overlap_area = 0.0;
    double worst_vertex_defect = 0.0;  ///< radians, over interior vertices
    double max_edge_mismatch = 0.0;
    std::size_t interior_vertex_count = 0;
};

/// Acceptance thresholds for a verified patch.
struct PatchThresholds {
    double overlap = 1e-8;
    double defect = 1e-6;
    double mismatch = 1e-8;
};

bool passes(const PatchReport& report, const PatchThresholds& limits = {});

/// Rebuilds every tile from its transform with its own unit-edge walk and
/// measures the patch. A vertex is interior when both edges of every corner
/// meeting there appear in the adjacency list.
///
/// Throws MalformedPatch for out-of-range indices, empty prototile lists or
/// non-finite transforms.
PatchReport verify_patch(const Patch& patch, const TolerancePolicy& tol = {});

/// Area of the intersection of two counterclockwise convex polygons.
double convex_intersection_area(const std::vector<Point2>& a, const std::vector<Point2>& b);

}  // namespace equitile
