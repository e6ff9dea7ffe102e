#include "equitile/patch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace equitile {

std::vector<Point2> placed_vertices(const Patch& patch, std::size_t tile) {
    const PlacedTile& t = patch.tiles.at(tile);
    const auto& proto = patch.prototiles.at(t.proto).vertices().vertices;
    std::vector<Point2> out;
    out.reserve(proto.size());
    for (const Point2& q : proto) {
        const Point2 local = t.reflected ? Point2{q.x, -q.y} : q;
        out.push_back(rotate(local, t.angle) + t.translation);
    }
    return out;
}

std::vector<Point2> placed_polygon_ccw(const Patch& patch, std::size_t tile) {
    auto pts = placed_vertices(patch, tile);
    if (patch.tiles[tile].reflected) std::reverse(pts.begin(), pts.end());
    return pts;
}

std::vector<std::vector<std::pair<long long, long long>>> canonical_form(const Patch& patch,
                                                                         double quantum) {
    std::vector<std::vector<std::pair<long long, long long>>> out;
    out.reserve(patch.tiles.size());
    for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
        std::vector<std::pair<long long, long long>> key;
        for (const Point2& p : placed_vertices(patch, i)) {
            key.emplace_back(std::llround(p.x / quantum), std::llround(p.y / quantum));
        }
        std::sort(key.begin(), key.end());
        out.push_back(std::move(key));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    const auto directed = [](const std::vector<Point2>& from, const std::vector<Point2>& to) {
        double worst = 0.0;
        for (const Point2& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point2& q : to) best = std::min(best, distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

Point2 centroid(const std::vector<Point2>& pts) {
    Point2 c{};
    for (const Point2& p : pts) c = c + p;
    return (1.0 / static_cast<double>(pts.size())) * c;
}

}  // namespace

double rotation_symmetry_error(const Patch& patch, double angle) {
    std::vector<std::vector<Point2>> polys;
    std::vector<Point2> centers;
    for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
        polys.push_back(placed_vertices(patch, i));
        centers.push_back(centroid(polys.back()));
    }
    double worst = 0.0;
    for (const auto& poly : polys) {
        std::vector<Point2> turned;
        for (const Point2& p : poly) turned.push_back(rotate(p, angle));
        const Point2 c = centroid(turned);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < polys.size(); ++j) {
            if (distance(c, centers[j]) > 1.0) continue;
            if (polys[j].size() != turned.size()) continue;
            best = std::min(best, hausdorff(turned, polys[j]));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace equitile
