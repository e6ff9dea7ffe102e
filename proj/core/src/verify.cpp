#include "equitile/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace equitile {

bool passes(const PatchReport& report, const PatchThresholds& limits) {
    return report.max_overlap_area <= limits.overlap && report.worst_vertex_defect <= limits.defect &&
           report.max_edge_mismatch <= limits.mismatch;
}

double convex_intersection_area(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    // Sutherland-Hodgman: clip a against every edge of b.
    std::vector<Point2> out = a;
    for (std::size_t i = 0; i < b.size() && !out.empty(); ++i) {
        const Point2 p = b[i];
        const Point2 q = b[(i + 1) % b.size()];
        const auto side = [&](Point2 x) { return cross(q - p, x - p); };
        std::vector<Point2> in;
        in.swap(out);
        for (std::size_t j = 0; j < in.size(); ++j) {
            const Point2 s = in[j];
            const Point2 e = in[(j + 1) % in.size()];
            const double ss = side(s);
            const double se = side(e);
            if (ss >= 0.0) out.push_back(s);
            if ((ss >= 0.0) != (se >= 0.0)) {
                const double t = ss / (ss - se);
                out.push_back(s + t * (e - s));
            }
        }
    }
    if (out.size() < 3) return 0.0;
    return std::max(0.0, signed_area(out));
}

namespace {

// Prototile vertices from the angle sequence, independent of the cached
// realization the grower uses.
std::vector<Point2> walk(const std::vector<double>& angles) {
    std::vector<Point2> pts{{0.0, 0.0}};
    double heading = 0.0;
    for (std::size_t i = 1; i < angles.size(); ++i) {
        pts.push_back(pts.back() + unit_vector(heading));
        heading += kPi - angles[i];
    }
    return pts;
}

struct Tile {
    std::vector<Point2> local;  // local order
    std::vector<Point2> ccw;
    std::vector<double> angles;
    double min_x, min_y, max_x, max_y;
};

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedPatch, what); }

}  // namespace

PatchReport verify_patch(const Patch& patch, const TolerancePolicy& tol) {
    (void)tol;
    if (patch.prototiles.empty()) malformed("patch has no prototile");
    std::vector<std::vector<Point2>> shapes;
    for (const auto& proto : patch.prototiles) shapes.push_back(walk(proto.angles()));

    std::vector<Tile> tiles;
    std::vector<std::size_t> corner_base;
    std::size_t corner_count = 0;
    for (const PlacedTile& pt : patch.tiles) {
        if (pt.proto >= patch.prototiles.size()) malformed("tile refers to a missing prototile");
        if (!std::isfinite(pt.angle) || !std::isfinite(pt.translation.x) || !std::isfinite(pt.translation.y)) {
            malformed("non-finite tile transform");
        }
        Tile t;
        t.angles = patch.prototiles[pt.proto].angles();
        const double c = std::cos(pt.angle);
        const double s = std::sin(pt.angle);
        for (Point2 q : shapes[pt.proto]) {
            if (pt.reflected) q.y = -q.y;
            t.local.push_back({c * q.x - s * q.y + pt.translation.x, s * q.x + c * q.y + pt.translation.y});
        }
        t.ccw = t.local;
        if (pt.reflected) std::reverse(t.ccw.begin(), t.ccw.end());
        t.min_x = t.min_y = 1e300;
        t.max_x = t.max_y = -1e300;
        for (const Point2& p : t.local) {
            t.min_x = std::min(t.min_x, p.x);
            t.min_y = std::min(t.min_y, p.y);
            t.max_x = std::max(t.max_x, p.x);
            t.max_y = std::max(t.max_y, p.y);
        }
        corner_base.push_back(corner_count);
        corner_count += t.local.size();
        tiles.push_back(std::move(t));
    }

    PatchReport report;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        for (std::size_t j = i + 1; j < tiles.size(); ++j) {
            const Tile& a = tiles[i];
            const Tile& b = tiles[j];
            if (a.max_x <= b.min_x || b.max_x <= a.min_x || a.max_y <= b.min_y || b.max_y <= a.min_y) continue;
            report.max_overlap_area = std::max(report.max_overlap_area, convex_intersection_area(a.ccw, b.ccw));
        }
    }

    DisjointSets corners(corner_count);
    std::vector<std::vector<bool>> matched(tiles.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) matched[i].assign(tiles[i].local.size(), false);

    for (const Adjacency& adj : patch.adjacency) {
        if (adj.tile_a >= tiles.size() || adj.tile_b >= tiles.size() || adj.tile_a == adj.tile_b) {
            malformed("adjacency refers to a missing tile");
        }
        const Tile& a = tiles[adj.tile_a];
        const Tile& b = tiles[adj.tile_b];
        const std::size_t na = a.local.size();
        const std::size_t nb = b.local.size();
        if (adj.edge_a >= na || adj.edge_b >= nb) malformed("adjacency refers to a missing edge");
        matched[adj.tile_a][adj.edge_a] = true;
        matched[adj.tile_b][adj.edge_b] = true;

        // Same handedness traverses a shared edge in opposite directions.
        const bool same = patch.tiles[adj.tile_a].reflected == patch.tiles[adj.tile_b].reflected;
        const std::size_t a0 = adj.edge_a;
        const std::size_t a1 = (adj.edge_a + 1) % na;
        const std::size_t b0 = same ? (adj.edge_b + 1) % nb : adj.edge_b;
        const std::size_t b1 = same ? adj.edge_b : (adj.edge_b + 1) % nb;
        report.max_edge_mismatch = std::max(
            {report.max_edge_mismatch, distance(a.local[a0], b.local[b0]), distance(a.local[a1], b.local[b1])});
        corners.unite(corner_base[adj.tile_a] + a0, corner_base[adj.tile_b] + b0);
        corners.unite(corner_base[adj.tile_a] + a1, corner_base[adj.tile_b] + b1);
    }

    // Per vertex class: angle sum and whether every incident edge is shared.
    std::vector<double> sums(corner_count, 0.0);
    std::vector<bool> interior(corner_count, true);
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const std::size_t n = tiles[i].local.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t root = corners.find(corner_base[i] + k);
            sums[root] += tiles[i].angles[k];
            if (!matched[i][k] || !matched[i][(k + n - 1) % n]) interior[root] = false;
        }
    }
    for (std::size_t c = 0; c < corner_count; ++c) {
        if (corners.find(c) != c || !interior[c]) continue;
        ++report.interior_vertex_count;
        report.worst_vertex_defect = std::max(report.worst_vertex_defect, std::abs(kTwoPi - sums[c]));
    }
    return report;
}

}  // namespace equitile
