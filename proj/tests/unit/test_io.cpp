#include <regex>

#include "doctest.h"
#include "equitile/constructors.hpp"
#include "equitile/io.hpp"
#include "equitile/rotational.hpp"
#include "equitile/tiler.hpp"
#include "equitile/verify.hpp"

using namespace equitile;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::InvalidInput;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("polygon JSON in angle form") {
    const auto p = parse_polygon_json(R"({"n": 4, "angles_deg": [90, 90, 90, 90]})");
    CHECK(p.size() == 4);
    CHECK(p.angle(0) == doctest::Approx(kPi / 2));
    CHECK(parse_polygon_json(R"({"angles_deg": [60, 60, 60]})").size() == 3);
}

TEST_CASE("polygon JSON in vertex form, either orientation") {
    const auto ccw = parse_polygon_json(R"({"vertices": [[0,0],[2,0],[2,2],[0,2]]})");
    const auto cw = parse_polygon_json(R"({"vertices": [[0,0],[0,2],[2,2],[2,0]]})");
    for (double a : ccw.angles()) CHECK(a == doctest::Approx(kPi / 2));
    for (double a : cw.angles()) CHECK(a == doctest::Approx(kPi / 2));
}

TEST_CASE("polygon JSON errors") {
    CHECK(kind_of([] { parse_polygon_json("{"); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { parse_polygon_json("[]"); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { parse_polygon_json(R"({"n": 3})"); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] {
              parse_polygon_json(R"({"angles_deg": [90,90,90,90], "vertices": [[0,0],[1,0],[1,1],[0,1]]})");
          }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { parse_polygon_json(R"({"n": 5, "angles_deg": [90,90,90,90]})"); }) ==
          ErrorKind::InvalidInput);
    CHECK(kind_of([] { parse_polygon_json(R"({"angles_deg": [90,90,90,91]})"); }) == ErrorKind::AngleSumMismatch);
    CHECK(kind_of([] { parse_polygon_json(R"({"angles_deg": [80,80,100,100]})"); }) == ErrorKind::ClosureFailure);
    CHECK(kind_of([] { parse_polygon_json(R"({"angles_deg": [180,60,60,60]})"); }) == ErrorKind::InvalidAngle);
    CHECK(kind_of([] { parse_polygon_json(R"({"vertices": [[0,0],[2,0],[2,1],[0,1]]})"); }) ==
          ErrorKind::InvalidPolygon);
}

TEST_CASE("degrees typed to a few decimals are accepted") {
    // P7 to six decimals closes only to about 1e-7.
    const auto p7 = construct_p7();
    std::string text = "{\"angles_deg\": [";
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        char buf[32];
        const double deg = k < 4 ? std::round(rad_to_deg(p7.angle(k)) * 1e6) / 1e6 : 540.0 - sum;
        sum += deg;
        std::snprintf(buf, sizeof buf, "%.6f", deg);
        text += (k ? ", " : "") + std::string(buf);
    }
    text += "]}";
    CHECK_NOTHROW(parse_polygon_json(text));
}

TEST_CASE("polygon JSON round trip") {
    const auto p = construct_p8();
    const auto back = parse_polygon_json(polygon_to_json(p));
    for (std::size_t k = 0; k < 5; ++k) CHECK(back.angle(k) == doctest::Approx(p.angle(k)).epsilon(1e-14));
}

TEST_CASE("patch JSON round trip is exact") {
    const auto grown = grow_patch(construct_p7(), 2);
    REQUIRE(grown.ok());
    const std::string text = patch_to_json(grown.patch);
    const Patch back = parse_patch_json(text);
    REQUIRE(back.tiles.size() == grown.patch.tiles.size());
    CHECK(back.prototiles[0].angles() == grown.patch.prototiles[0].angles());
    for (std::size_t t = 0; t < back.tiles.size(); ++t) {
        CHECK(back.tiles[t].angle == grown.patch.tiles[t].angle);
        CHECK(back.tiles[t].translation == grown.patch.tiles[t].translation);
        CHECK(back.tiles[t].reflected == grown.patch.tiles[t].reflected);
        CHECK(back.tiles[t].ring == grown.patch.tiles[t].ring);
    }
    CHECK(back.adjacency == grown.patch.adjacency);
    CHECK(patch_to_json(back) == text);
    CHECK(text.find("\"prototile\"") != std::string::npos);

    const auto a = verify_patch(grown.patch);
    const auto b = verify_patch(back);
    CHECK(a.max_edge_mismatch == b.max_edge_mismatch);
    CHECK(a.worst_vertex_defect == b.worst_vertex_defect);
}

TEST_CASE("several prototiles round trip") {
    const Patch p = rotational_hexagon_tiling(5, 2);
    REQUIRE(p.prototiles.size() > 1);
    const std::string text = patch_to_json(p);
    CHECK(text.find("\"prototiles\"") != std::string::npos);
    const Patch back = parse_patch_json(text);
    CHECK(back.prototiles.size() == p.prototiles.size());
    CHECK(patch_to_json(back) == text);
}

TEST_CASE("patch JSON errors") {
    CHECK(kind_of([] { parse_patch_json("nope"); }) == ErrorKind::MalformedPatch);
    CHECK(kind_of([] { parse_patch_json(R"({"tiles": []})"); }) == ErrorKind::MalformedPatch);
    CHECK(kind_of([] {
              parse_patch_json(R"({"prototile": {"angles_deg": [90,90,90,90]}, "tiles": [{"tx": 0, "ty": 0}]})");
          }) == ErrorKind::MalformedPatch);
    CHECK(kind_of([] {
              parse_patch_json(
                  R"({"prototile": {"angles_deg": [90,90,90,90]}, "tiles": [{"proto": 2, "angle_rad": 0, "tx": 0, "ty": 0}]})");
          }) == ErrorKind::MalformedPatch);
    CHECK(kind_of([] {
              parse_patch_json(R"({"prototile": {"angles_deg": [90,90,90,80]}, "tiles": []})");
          }) == ErrorKind::MalformedPatch);
    const Patch minimal = parse_patch_json(
        R"({"prototile": {"angles_deg": [90,90,90,90]}, "tiles": [{"angle_rad": 0, "tx": 1, "ty": 2}]})");
    CHECK(minimal.tiles.size() == 1);
    CHECK_FALSE(minimal.tiles[0].reflected);
}

TEST_CASE("single square renders as one closed path") {
    const EquilateralPolygon sq(std::vector<double>(4, kPi / 2));
    RenderStyle style;
    const std::string svg = to_svg(single_tile_patch(sq), style);
    CHECK(count(svg, "<path ") == 1);
    CHECK(count(svg, " L") == 3);
    CHECK(count(svg, " Z\"") == 1);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("viewBox=\"([-0-9.]+) ([-0-9.]+) ([-0-9.]+) ([-0-9.]+)\"")));
    const double x = std::stod(m[1]), y = std::stod(m[2]), w = std::stod(m[3]), h = std::stod(m[4]);
    // The y axis is flipped, so the square occupies [0,1] x [-1,0].
    CHECK(x <= -style.margin);
    CHECK(x + w >= 1 + style.margin);
    CHECK(y <= -1 - style.margin);
    CHECK(y + h >= style.margin);
    CHECK(svg.find("-0.000000") == std::string::npos);
}

TEST_CASE("rendering is byte-deterministic and follows the palette") {
    const Patch p = rotational_hexagon_tiling(7, 2);
    RenderStyle style;
    const std::string a = to_svg(p, style);
    CHECK(a == to_svg(p, style));
    CHECK(count(a, "<path ") == p.tiles.size());
    CHECK(count(a, "fill=\"" + style.fill(0, false) + "\"") == 7);
    CHECK(count(a, "fill=\"" + style.fill(1, false) + "\"") == 21);
}

TEST_CASE("render style and empty patch errors") {
    Patch empty;
    empty.prototiles.emplace_back(std::vector<double>(4, kPi / 2));
    CHECK(kind_of([&] { to_svg(empty); }) == ErrorKind::EmptyPatch);
    RenderStyle bad;
    bad.scale = 0;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidInput);
    RenderStyle no_colours;
    no_colours.palette.clear();
    CHECK(kind_of([&] { no_colours.validate(); }) == ErrorKind::InvalidInput);
}
