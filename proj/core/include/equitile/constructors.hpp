#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "equitile/geometry.hpp"
#include "equitile/type_catalog.hpp"

namespace equitile {

/// Bisection on a continuous function with a sign change over [lo, hi].
/// Stops at interval width `tol_param`; throws ConvergenceFailure if the
/// bracket is invalid or `max_iterations` is exceeded.
struct BisectionProblem {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> objective;
    double tol_param = 1e-12;
    int max_iterations = 200;
};

double bisect(const BisectionProblem& problem);

// --- Type 8 (mirror-symmetric layout) ---------------------------------------
//
// Edge BC is horizontal with unit length, apex E on its perpendicular
// bisector at height h. tau is the angle between line DB and edge DE; the
// second type-8 relation is equivalent to tau = pi/2.

struct P8State {
    double h = 0.0;
    double tau = 0.0;
};

/// Height of the apex above the base edge in the regular unit pentagon.
double regular_pentagon_height();
/// The symmetric unit-edge pentagon A..E for apex height h.
PolygonVertices p8_layout(double h);
P8State p8_state(double h);
EquilateralPolygon construct_p8(const TolerancePolicy& tol = {});

// --- Type 7 -----------------------------------------------------------------
//
// Edge AB is vertical with unit length; D lies on the horizontal line through
// B at distance x, which enforces B + C/2 = pi. The remaining relation
// A/2 + D = pi selects x.

struct P7Objective {
    double half_a = 0.0;  ///< A/2 in radians
    double d = 0.0;       ///< D in radians
    double sum() const { return half_a + d; }
};

PolygonVertices p7_layout(double x);
P7Objective p7_objective(double x);
EquilateralPolygon construct_p7(const TolerancePolicy& tol = {});

// --- Type 9 infeasibility ---------------------------------------------------

struct InfeasibilityCertificate {
    double grid_step = 0.0;
    double min_residual = 0.0;
    std::array<double, 5> argmin{};
    double convexity_margin = 0.0;
    std::size_t points_scanned = 0;
};

/// |2E + B - 2pi| + |2D + C - 2pi| for the labeling given.
double type9_residual(std::span<const double> angles, const Relabeling& relabeling = {});
/// Minimum of type9_residual over all 10 relabelings.
double type9_residual_min(std::span<const double> angles);

/// Scans the strictly convex unit-edge pentagons on a grid over the chart
/// (angle0, angle1). Rows are split across `workers` threads; the result does
/// not depend on the worker count.
InfeasibilityCertificate search_type9(double grid_step = deg_to_rad(0.1),
                                      double convexity_margin = 1e-3, unsigned workers = 0);

// --- General constrained pentagon -------------------------------------------

struct PinnedAngle {
    std::size_t vertex = 0;
    double value = 0.0;  ///< radians
};

/// Damped Gauss-Newton on the pentagon chart. Needs at least two equations
/// (relations plus the optional pin).
EquilateralPolygon solve_equilateral_pentagon(std::span<const AngleRelation> relations,
                                              const std::array<double, 5>& guess,
                                              const TolerancePolicy& tol = {},
                                              std::optional<PinnedAngle> pinned = std::nullopt);

// --- Tiling families --------------------------------------------------------

/// Parameter interval (in the anchor angle) of the one-parameter family of
/// strictly convex unit-edge pentagons with angle_i + angle_j = pi.
struct PentagonFamily {
    std::size_t i = 0;
    std::size_t j = 0;
    double lo = 0.0;
    double hi = 0.0;
};

PentagonFamily pentagon_pair_family(std::size_t i, std::size_t j);

/// Member of the family at t in (0, 1). Throws EmptyFamily at or beyond the
/// endpoints, or when no strictly convex member exists there.
EquilateralPolygon sample_tiling_pentagon(std::size_t i, std::size_t j, double t,
                                          const TolerancePolicy& tol = {});

/// Strictly convex unit-edge hexagon with angle_i + angle_j + angle_k = 2pi.
/// At least two of the indices must be cyclically adjacent. params in (0,1)^2
/// set the two angles of that adjacent pair to pi * params.
EquilateralPolygon sample_tiling_hexagon(std::size_t i, std::size_t j, std::size_t k,
                                         std::array<double, 2> params,
                                         const TolerancePolicy& tol = {});

}  // namespace equitile
