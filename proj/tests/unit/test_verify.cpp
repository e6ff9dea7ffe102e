#include "doctest.h"
#include "equitile/constructors.hpp"
#include "equitile/tiler.hpp"
#include "equitile/verify.hpp"

using namespace equitile;

namespace {

Patch squares(std::vector<Point2> offsets) {
    Patch p;
    p.prototiles.emplace_back(std::vector<double>(4, kPi / 2));
    for (Point2 o : offsets) p.tiles.push_back({0, 0.0, o, false, 0});
    return p;
}

Patch square_grid() {
    std::vector<Point2> offsets;
    for (int y = -1; y <= 1; ++y) {
        for (int x = -1; x <= 1; ++x) offsets.push_back({double(x), double(y)});
    }
    Patch p = squares(offsets);
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 3; ++x) {
            const std::size_t t = y * 3 + x;
            if (x < 2) p.adjacency.push_back({t, 1, t + 1, 3});  // right edge to left edge
            if (y < 2) p.adjacency.push_back({t, 2, t + 3, 0});  // top edge to bottom edge
        }
    }
    return p;
}

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

}  // namespace

TEST_CASE("hand-built 3x3 grid is clean") {
    const auto report = verify_patch(square_grid());
    CHECK(report.max_overlap_area <= 1e-9);
    CHECK(report.worst_vertex_defect <= 1e-9);
    CHECK(report.max_edge_mismatch <= 1e-9);
    CHECK(report.interior_vertex_count == 4);
}

TEST_CASE("two squares offset by half an edge overlap by one half") {
    const auto report = verify_patch(squares({{0, 0}, {0.5, 0}}));
    CHECK(report.max_overlap_area == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("350 degrees around a vertex is a 10 degree defect") {
    // Four rhombi with their acute corner at the origin, rotated so that
    // neighbours share an edge; the last gap stays open by ten degrees.
    const double acute = deg_to_rad(87.5);
    Patch p;
    p.prototiles.emplace_back(std::vector<double>{acute, kPi - acute, acute, kPi - acute});
    for (int i = 0; i < 4; ++i) p.tiles.push_back({0, i * acute, {0, 0}, false, 0});
    for (std::size_t i = 0; i < 4; ++i) p.adjacency.push_back({i, 3, (i + 1) % 4, 0});
    const auto report = verify_patch(p);
    CHECK(report.interior_vertex_count == 1);
    CHECK(report.worst_vertex_defect == doctest::Approx(deg_to_rad(10.0)).epsilon(1e-12));
    CHECK(report.max_overlap_area <= 1e-12);
}

TEST_CASE("reflected neighbours compare edges in the same direction") {
    // A square and its mirror image across the line x = 1 share the edge x = 1.
    Patch p = squares({{0, 0}});
    p.tiles.push_back({0, kPi, {2, 0}, true, 0});
    // Mirrored copy: local vertices (2,0), (1,0), (1,1), (2,1); edge 1 is x = 1.
    p.adjacency.push_back({0, 1, 1, 1});
    const auto report = verify_patch(p);
    CHECK(report.max_edge_mismatch <= 1e-12);
    CHECK(report.max_overlap_area <= 1e-12);
}

TEST_CASE("intersection area of convex polygons") {
    const std::vector<Point2> a{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    const std::vector<Point2> b{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    CHECK(convex_intersection_area(a, b) == doctest::Approx(1.0));
    const std::vector<Point2> far{{5, 5}, {6, 5}, {6, 6}};
    CHECK(convex_intersection_area(a, far) == 0.0);
    const std::vector<Point2> inner{{0.5, 0.5}, {1.5, 0.5}, {1.0, 1.5}};
    CHECK(convex_intersection_area(a, inner) == doctest::Approx(0.5));
}

TEST_CASE("malformed patches are rejected") {
    Patch none;
    CHECK(kind_of([&] { verify_patch(none); }) == ErrorKind::MalformedPatch);
    Patch bad_proto = squares({{0, 0}});
    bad_proto.tiles[0].proto = 3;
    CHECK(kind_of([&] { verify_patch(bad_proto); }) == ErrorKind::MalformedPatch);
    Patch bad_adj = squares({{0, 0}, {1, 0}});
    bad_adj.adjacency.push_back({0, 1, 5, 3});
    CHECK(kind_of([&] { verify_patch(bad_adj); }) == ErrorKind::MalformedPatch);
    Patch bad_edge = squares({{0, 0}, {1, 0}});
    bad_edge.adjacency.push_back({0, 4, 1, 3});
    CHECK(kind_of([&] { verify_patch(bad_edge); }) == ErrorKind::MalformedPatch);
    Patch nan = squares({{0, 0}});
    nan.tiles[0].angle = std::nan("");
    CHECK(kind_of([&] { verify_patch(nan); }) == ErrorKind::MalformedPatch);
}

TEST_CASE("corruptions of grown patches are caught") {
    const auto grown = grow_patch(construct_p8(), 2);
    REQUIRE(grown.ok());
    REQUIRE(passes(verify_patch(grown.patch)));

    SUBCASE("shifted tile shows as edge mismatch") {
        Patch p = grown.patch;
        p.tiles[3].translation = p.tiles[3].translation + Point2{1e-4, -2e-4};
        const auto report = verify_patch(p);
        CHECK(report.max_edge_mismatch > 1e-5);
    }
    SUBCASE("turned tile shows as edge mismatch") {
        Patch p = grown.patch;
        p.tiles[5].angle += 1e-4;
        CHECK(verify_patch(p).max_edge_mismatch > 1e-6);
    }
    SUBCASE("tile stacked on its neighbour shows as overlap") {
        Patch p = grown.patch;
        p.tiles[2] = p.tiles[1];
        CHECK(verify_patch(p).max_overlap_area > 0.1);
    }
}
