#pragma once

#include <array>
#include <string>

#include "equitile/geometry.hpp"

namespace equitile {

enum class VerdictReason {
    TriangleOrQuadrangle,
    PentagonPairSum,
    PentagonP7,
    HexagonTriple,
    TooManyVertices,
    NoConditionMet,
};

std::string_view to_string(VerdictReason reason);

struct Verdict {
    bool tiles = false;
    VerdictReason reason = VerdictReason::NoConditionMet;
    /// Witness vertex indices: two for PentagonPairSum, three for
    /// HexagonTriple, unused otherwise.
    std::array<std::size_t, 3> witness{};
    std::size_t witness_size = 0;
    std::size_t vertex_count = 0;
};

/// Decides whether an equilateral strictly convex polygon tiles the plane.
/// Throws InvalidPolygon unless every angle lies in (0, pi).
Verdict classify(const EquilateralPolygon& p, const TolerancePolicy& tol = {});

/// One-paragraph justification of a verdict.
std::string explain(const Verdict& v);

}  // namespace equitile
