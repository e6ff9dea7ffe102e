#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "equitile/geometry.hpp"
#include "equitile/patch.hpp"

namespace equitile {

/// Tolerances for polygons read from files: angle sum, closure and edge
/// equality are all checked against tol_classify, since coordinates and
/// degrees typed by hand rarely close to 1e-9.
TolerancePolicy input_tolerance(const TolerancePolicy& tol);

/// Reads `{"n": 5, "angles_deg": [...]}` or `{"vertices": [[x, y], ...]}`.
/// Exactly one form must be present; "n" is optional but must match the
/// angle count when given. Clockwise vertex lists are reversed.
/// Throws InvalidInput for malformed JSON and the usual polygon errors for
/// invalid shapes.
EquilateralPolygon parse_polygon_json(std::string_view text, const TolerancePolicy& tol = {});

/// Same schema, without requiring equal edges: the catalog matcher reads edge
/// lengths from the vertices. Angle input is closed with unit edges.
PolygonVertices parse_polygon_vertices_json(std::string_view text, const TolerancePolicy& tol = {});

/// `{"n": .., "angles_deg": [..]}`, readable by parse_polygon_json.
std::string polygon_to_json(const EquilateralPolygon& p);

/// Patch file: one prototile under "prototile" or several under
/// "prototiles" (each with "angles_deg" and, for exact round trips,
/// "angles_rad"), a "tiles" list of {proto, angle_rad, tx, ty, reflected,
/// ring} and an "adjacency" list of [tile, edge, tile, edge].
std::string patch_to_json(const Patch& patch);

/// Throws MalformedPatch for structural problems.
Patch parse_patch_json(std::string_view text, const TolerancePolicy& tol = {});

struct RenderStyle {
    double stroke_width = 0.02;  ///< edge lengths
    /// Fill colours, picked by (2 * ring + reflected) modulo the size.
    std::vector<std::string> palette{"#f2c14e", "#d1495b", "#86bbd8", "#2f4858",
                                     "#9ec1a3", "#6c4f70", "#f78154", "#4d9078"};
    double margin = 0.25;  ///< edge lengths
    double scale = 80.0;   ///< pixels per edge length

    /// Throws InvalidInput unless scale > 0, the palette is nonempty and the
    /// other fields are nonnegative.
    void validate() const;
    const std::string& fill(int ring, bool reflected) const;
};

/// One path per tile, in tile order. The y axis is flipped so the picture
/// has the usual mathematical orientation; the viewBox is in edge-length
/// units. Coordinates are printed with six decimals. Throws EmptyPatch for a
/// patch without tiles.
std::string to_svg(const Patch& patch, const RenderStyle& style = {});

/// A single copy of `p` in its standard position.
Patch single_tile_patch(const EquilateralPolygon& p);

}  // namespace equitile
