#include <algorithm>

#include "equitile/io.hpp"
#include "json.hpp"

namespace equitile {

using nlohmann::json;

TolerancePolicy input_tolerance(const TolerancePolicy& tol) {
    TolerancePolicy out = tol;
    out.tol_angle = tol.tol_classify;
    out.tol_closure = tol.tol_classify;
    out.tol_geom = tol.tol_classify;
    return out;
}

namespace {

json parse_or_throw(std::string_view text, ErrorKind kind) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(kind, std::string("malformed JSON: ") + e.what());
    }
}

std::vector<double> radians_from(const json& degrees, ErrorKind kind) {
    if (!degrees.is_array()) throw Error(kind, "\"angles_deg\" must be an array");
    std::vector<double> out;
    for (const auto& v : degrees) {
        if (!v.is_number()) throw Error(kind, "angles must be numbers");
        out.push_back(deg_to_rad(v.get<double>()));
    }
    return out;
}

std::vector<double> exact_radians(const json& radians, ErrorKind kind) {
    if (!radians.is_array()) throw Error(kind, "\"angles_rad\" must be an array");
    std::vector<double> out;
    for (const auto& v : radians) {
        if (!v.is_number()) throw Error(kind, "angles must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json prototile_json(const EquilateralPolygon& p) {
    json deg = json::array();
    for (double a : p.angles()) deg.push_back(rad_to_deg(a));
    return {{"angles_deg", deg}, {"angles_rad", p.angles()}};
}

EquilateralPolygon prototile_from(const json& j, const TolerancePolicy& tol) {
    if (!j.is_object()) throw Error(ErrorKind::MalformedPatch, "prototile must be an object");
    std::vector<double> angles;
    if (j.contains("angles_rad")) {
        angles = exact_radians(j["angles_rad"], ErrorKind::MalformedPatch);
    } else if (j.contains("angles_deg")) {
        angles = radians_from(j["angles_deg"], ErrorKind::MalformedPatch);
    } else {
        throw Error(ErrorKind::MalformedPatch, "prototile needs \"angles_deg\"");
    }
    try {
        return EquilateralPolygon(std::move(angles), input_tolerance(tol));
    } catch (const Error& e) {
        throw Error(ErrorKind::MalformedPatch, std::string("invalid prototile: ") + e.what());
    }
}

}  // namespace

PolygonVertices parse_polygon_vertices_json(std::string_view text, const TolerancePolicy& tol) {
    const json j = parse_or_throw(text, ErrorKind::InvalidInput);
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "polygon JSON must be an object");
    const bool has_angles = j.contains("angles_deg");
    const bool has_vertices = j.contains("vertices");
    if (has_angles == has_vertices) {
        throw Error(ErrorKind::InvalidInput, "give exactly one of \"angles_deg\" and \"vertices\"");
    }
    if (has_angles) {
        auto angles = radians_from(j["angles_deg"], ErrorKind::InvalidInput);
        if (j.contains("n")) {
            if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(angles.size())) {
                throw Error(ErrorKind::InvalidInput, "\"n\" does not match the number of angles");
            }
        }
        return EquilateralPolygon(std::move(angles), input_tolerance(tol)).vertices();
    }
    if (j.contains("n")) throw Error(ErrorKind::InvalidInput, "\"n\" goes with \"angles_deg\", not \"vertices\"");
    const json& vs = j["vertices"];
    if (!vs.is_array()) throw Error(ErrorKind::InvalidInput, "\"vertices\" must be an array");
    PolygonVertices poly;
    for (const auto& v : vs) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw Error(ErrorKind::InvalidInput, "each vertex must be [x, y]");
        }
        poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    if (poly.size() >= 3 && signed_area(poly.vertices) < 0.0) {
        std::reverse(poly.vertices.begin(), poly.vertices.end());
    }
    return poly;
}

EquilateralPolygon parse_polygon_json(std::string_view text, const TolerancePolicy& tol) {
    return EquilateralPolygon::from_vertices(parse_polygon_vertices_json(text, tol), input_tolerance(tol));
}

std::string polygon_to_json(const EquilateralPolygon& p) {
    json deg = json::array();
    for (double a : p.angles()) deg.push_back(rad_to_deg(a));
    const json j = {{"n", p.size()}, {"angles_deg", deg}};
    return j.dump(2);
}

std::string patch_to_json(const Patch& patch) {
    json j = json::object();
    if (patch.prototiles.size() == 1) {
        j["prototile"] = prototile_json(patch.prototiles.front());
    } else {
        json protos = json::array();
        for (const auto& p : patch.prototiles) protos.push_back(prototile_json(p));
        j["prototiles"] = protos;
    }
    json tiles = json::array();
    for (const PlacedTile& t : patch.tiles) {
        tiles.push_back({{"proto", t.proto},
                         {"angle_rad", t.angle},
                         {"tx", t.translation.x},
                         {"ty", t.translation.y},
                         {"reflected", t.reflected},
                         {"ring", t.ring}});
    }
    j["tiles"] = tiles;
    json adjacency = json::array();
    for (const Adjacency& a : patch.adjacency) adjacency.push_back({a.tile_a, a.edge_a, a.tile_b, a.edge_b});
    j["adjacency"] = adjacency;
    return j.dump(2);
}

Patch parse_patch_json(std::string_view text, const TolerancePolicy& tol) {
    const json j = parse_or_throw(text, ErrorKind::MalformedPatch);
    if (!j.is_object()) throw Error(ErrorKind::MalformedPatch, "patch JSON must be an object");
    Patch patch;
    if (j.contains("prototile") == j.contains("prototiles")) {
        throw Error(ErrorKind::MalformedPatch, "give exactly one of \"prototile\" and \"prototiles\"");
    }
    if (j.contains("prototile")) {
        patch.prototiles.push_back(prototile_from(j["prototile"], tol));
    } else {
        if (!j["prototiles"].is_array()) throw Error(ErrorKind::MalformedPatch, "\"prototiles\" must be an array");
        for (const auto& p : j["prototiles"]) patch.prototiles.push_back(prototile_from(p, tol));
    }
    if (!j.contains("tiles") || !j["tiles"].is_array()) {
        throw Error(ErrorKind::MalformedPatch, "\"tiles\" must be an array");
    }
    try {
        for (const auto& t : j["tiles"]) {
            PlacedTile tile;
            tile.proto = t.value("proto", std::size_t{0});
            tile.angle = t.at("angle_rad").get<double>();
            tile.translation = {t.at("tx").get<double>(), t.at("ty").get<double>()};
            tile.reflected = t.value("reflected", false);
            tile.ring = t.value("ring", 0);
            if (tile.proto >= patch.prototiles.size()) {
                throw Error(ErrorKind::MalformedPatch, "tile refers to a missing prototile");
            }
            patch.tiles.push_back(tile);
        }
        if (j.contains("adjacency")) {
            for (const auto& a : j["adjacency"]) {
                if (!a.is_array() || a.size() != 4) {
                    throw Error(ErrorKind::MalformedPatch, "adjacency entries are [tile, edge, tile, edge]");
                }
                patch.adjacency.push_back({a[0].get<std::size_t>(), a[1].get<std::size_t>(),
                                           a[2].get<std::size_t>(), a[3].get<std::size_t>()});
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedPatch, std::string("malformed tile entry: ") + e.what());
    }
    return patch;
}

Patch single_tile_patch(const EquilateralPolygon& p) {
    Patch patch;
    patch.prototiles.push_back(p);
    patch.tiles.push_back({});
    return patch;
}

}  // namespace equitile
