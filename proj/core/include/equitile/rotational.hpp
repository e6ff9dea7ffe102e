#pragma once

#include "equitile/geometry.hpp"
#include "equitile/patch.hpp"

namespace equitile {

/// Patch of unit-edge convex hexagons invariant under rotation by 2pi/n
/// about the origin, `rings` layers deep.
///
/// The combinatorics are those of the honeycomb around one of its vertices,
/// with each 120-degree sector squeezed into a wedge of angle 2pi/n: every
/// vertex of one wedge is solved for so that all edges have unit length and
/// the vertices on the wedge's trailing side are the images of those on its
/// leading side under the rotation. The solve starts from the honeycomb and
/// decreases the wedge angle in small steps; a convexity barrier keeps the
/// hexagons away from straight angles. The wedge is then copied n times.
/// For n = 6 the patch is the regular honeycomb around a hexagon centre.
///
/// Ring r (0-based in PlacedTile::ring) holds n(2r+1) hexagons, or 6r for
/// n = 6 outside the central tile. Throws ConstructionFailure if a step of the
/// solve fails to converge or leaves a hexagon non-convex.
Patch rotational_hexagon_tiling(int n, int rings, const TolerancePolicy& tol = {});

}  // namespace equitile
