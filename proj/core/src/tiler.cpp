#include "equitile/tiler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>

namespace equitile {

std::vector<std::size_t> VertexFigure::labels() const {
    std::vector<std::size_t> out;
    for (const auto& e : entries) out.push_back(e.label);
    return out;
}

std::string_view to_string(GrowStatus status) {
    switch (status) {
        case GrowStatus::Success: return "success";
        case GrowStatus::Exhausted: return "exhausted";
        case GrowStatus::Budget: return "budget";
    }
    return "unknown";
}

namespace {

struct AngleClass {
    std::size_t label;
    double angle;
};

std::vector<AngleClass> angle_classes(const EquilateralPolygon& p, double tol) {
    std::vector<AngleClass> classes;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool seen = std::any_of(classes.begin(), classes.end(), [&](const AngleClass& c) {
            return std::abs(c.angle - p.angle(i)) <= tol;
        });
        if (!seen) classes.push_back({i, p.angle(i)});
    }
    return classes;
}

// Calls visit(counts, sum) for every multiset over the classes whose sum stays
// at or below `limit`, sizes capped by max_size.
template <typename Visit>
void for_each_multiset(const std::vector<AngleClass>& classes, double limit, std::size_t max_size,
                       Visit&& visit) {
    std::vector<std::size_t> picks;
    auto rec = [&](auto&& self, std::size_t first, double sum) -> void {
        visit(picks, sum);
        if (picks.size() == max_size) return;
        for (std::size_t c = first; c < classes.size(); ++c) {
            const double next = sum + classes[c].angle;
            if (next > limit) continue;
            picks.push_back(c);
            self(self, c, next);
            picks.pop_back();
        }
    };
    rec(rec, 0, 0.0);
}

}  // namespace

std::vector<VertexFigure> vertex_figures(const EquilateralPolygon& p, const TolerancePolicy& tol,
                                         std::size_t max_entries) {
    const auto classes = angle_classes(p, tol.tol_classify);
    std::vector<VertexFigure> out;
    for_each_multiset(classes, kTwoPi + tol.tol_classify, max_entries,
                      [&](const std::vector<std::size_t>& picks, double sum) {
                          if (picks.size() < 3 || std::abs(sum - kTwoPi) > tol.tol_classify) return;
                          VertexFigure f;
                          for (std::size_t c : picks) f.entries.push_back({classes[c].label, false});
                          f.total = sum;
                          out.push_back(std::move(f));
                      });
    std::sort(out.begin(), out.end(), [](const VertexFigure& a, const VertexFigure& b) {
        if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
        return a.labels() < b.labels();
    });
    return out;
}

namespace {

using CellKey = std::pair<long long, long long>;

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        return std::hash<long long>()(k.first * 73856093LL) ^ std::hash<long long>()(k.second * 19349663LL);
    }
};

struct Corner {
    std::size_t tile;
    std::size_t local;
};

struct VertexRecord {
    Point2 pos;
    double angle_sum = 0.0;
    std::vector<Corner> corners;
};

struct TileRecord {
    double angle;
    Point2 translation;
    bool reflected;
    std::vector<Point2> pts;        // local order
    std::vector<std::size_t> vids;  // local order
    double min_x, min_y, max_x, max_y;
    std::vector<CellKey> cells;
    std::vector<std::size_t> vertex_cells_created;  // vertex ids created by this placement
    std::size_t adjacency_before;
};

struct Candidate {
    double angle;
    Point2 translation;
    bool reflected;
    std::vector<Point2> pts;
    std::vector<std::optional<std::size_t>> merged;  // existing vertex id per local vertex
};

class Grower {
public:
    Grower(const EquilateralPolygon& p, int rings, bool allow_reflections, const TolerancePolicy& tol,
           const GrowOptions& options)
        : proto_(p), n_(p.size()), rings_(rings), allow_reflections_(allow_reflections), tol_(tol),
          opt_(options) {
        const auto classes = angle_classes(p, tol.tol_classify);
        for_each_multiset(classes, kTwoPi + tol.tol_classify, std::numeric_limits<std::size_t>::max(),
                          [&](const std::vector<std::size_t>& picks, double sum) {
                              if (!picks.empty()) fill_sums_.push_back(sum);
                          });
        std::sort(fill_sums_.begin(), fill_sums_.end());
    }

    GrowResult run() {
        GrowResult result;
        Candidate seed = make_candidate(0.0, {0.0, 0.0}, false);
        if (!admissible(seed)) {
            result.status = GrowStatus::Exhausted;
            return result;
        }
        commit(seed);
        bool found = false;
        try {
            found = search();
        } catch (const BudgetExceeded&) {
            result.status = GrowStatus::Budget;
            result.placements = placements_;
            return result;
        }
        result.placements = placements_;
        if (!found) {
            result.status = GrowStatus::Exhausted;
            return result;
        }
        result.status = GrowStatus::Success;
        result.patch = export_patch();
        return result;
    }

private:
    struct BudgetExceeded {};

    const EquilateralPolygon& proto_;
    std::size_t n_;
    int rings_;
    bool allow_reflections_;
    TolerancePolicy tol_;
    GrowOptions opt_;
    std::vector<double> fill_sums_;

    std::vector<TileRecord> tiles_;
    std::vector<VertexRecord> vertices_;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> tile_cells_;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> vertex_cells_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> edges_;
    std::vector<Adjacency> adjacency_;
    std::vector<std::vector<std::size_t>> neighbours_;
    std::size_t placements_ = 0;

    static constexpr double kTileCell = 2.0;
    static constexpr double kVertexCell = 1.0;

    static CellKey cell_of(Point2 p, double size) {
        return {static_cast<long long>(std::floor(p.x / size)), static_cast<long long>(std::floor(p.y / size))};
    }

    Point2 local_point(std::size_t k, bool reflected) const {
        const Point2 q = proto_.vertices()[k];
        return reflected ? Point2{q.x, -q.y} : q;
    }

    Candidate make_candidate(double angle, Point2 translation, bool reflected) const {
        Candidate c{angle, translation, reflected, {}, {}};
        c.pts.reserve(n_);
        for (std::size_t k = 0; k < n_; ++k) c.pts.push_back(rotate(local_point(k, reflected), angle) + translation);
        return c;
    }

    std::optional<std::size_t> find_vertex(Point2 p) const {
        const CellKey base = cell_of(p, kVertexCell);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = vertex_cells_.find({base.first + dx, base.second + dy});
                if (it == vertex_cells_.end()) continue;
                for (std::size_t vid : it->second) {
                    if (distance(vertices_[vid].pos, p) <= opt_.merge_distance) return vid;
                }
            }
        }
        return std::nullopt;
    }

    std::vector<std::size_t> nearby_tiles(double min_x, double min_y, double max_x, double max_y) const {
        std::vector<std::size_t> out;
        const CellKey lo = cell_of({min_x, min_y}, kTileCell);
        const CellKey hi = cell_of({max_x, max_y}, kTileCell);
        for (long long x = lo.first; x <= hi.first; ++x) {
            for (long long y = lo.second; y <= hi.second; ++y) {
                const auto it = tile_cells_.find({x, y});
                if (it == tile_cells_.end()) continue;
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Separating-axis test on two convex polygons; touching along an edge or
    // at a point does not count as overlap.
    bool overlaps(const std::vector<Point2>& a, const std::vector<Point2>& b) const {
        const auto separated_by = [&](const std::vector<Point2>& poly) {
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Point2 e = poly[(i + 1) % poly.size()] - poly[i];
                const Point2 axis{-e.y, e.x};
                double a_lo = 1e300, a_hi = -1e300, b_lo = 1e300, b_hi = -1e300;
                for (const Point2& p : a) {
                    const double s = dot(p, axis);
                    a_lo = std::min(a_lo, s);
                    a_hi = std::max(a_hi, s);
                }
                for (const Point2& p : b) {
                    const double s = dot(p, axis);
                    b_lo = std::min(b_lo, s);
                    b_hi = std::max(b_hi, s);
                }
                const double len = norm(axis);
                if (std::min(a_hi, b_hi) - std::max(a_lo, b_lo) <= opt_.overlap_slack * len) return true;
            }
            return false;
        };
        return !(separated_by(a) || separated_by(b));
    }

    bool gap_fillable(double gap) const {
        if (gap <= tol_.tol_classify) return gap >= -tol_.tol_classify;
        const auto it = std::lower_bound(fill_sums_.begin(), fill_sums_.end(), gap - tol_.tol_classify);
        return it != fill_sums_.end() && *it <= gap + tol_.tol_classify;
    }

    // Collision, T-junction and vertex-angle checks. Fills c.merged.
    bool admissible(Candidate& c) const {
        double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
        for (const Point2& p : c.pts) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
        const auto near = nearby_tiles(min_x - 0.1, min_y - 0.1, max_x + 0.1, max_y + 0.1);

        c.merged.assign(n_, std::nullopt);
        std::map<std::size_t, double> added;
        for (std::size_t k = 0; k < n_; ++k) {
            c.merged[k] = find_vertex(c.pts[k]);
            if (c.merged[k]) added[*c.merged[k]] += proto_.angle(k);
        }
        for (const auto& [vid, extra] : added) {
            if (!gap_fillable(kTwoPi - vertices_[vid].angle_sum - extra)) return false;
        }
        for (std::size_t k = 0; k < n_; ++k) {
            if (!c.merged[k] && !gap_fillable(kTwoPi - proto_.angle(k))) return false;
        }

        for (std::size_t t : near) {
            const TileRecord& other = tiles_[t];
            if (other.max_x < min_x || other.min_x > max_x || other.max_y < min_y || other.min_y > max_y) {
                continue;
            }
            if (overlaps(c.pts, other.pts)) return false;
            // An existing vertex on the interior of a new edge, or a fresh
            // vertex on the interior of an existing edge, breaks edge-to-edge.
            for (std::size_t j = 0; j < other.pts.size(); ++j) {
                const std::size_t vid = other.vids[j];
                const bool shared = std::any_of(c.merged.begin(), c.merged.end(),
                                                [&](const auto& m) { return m && *m == vid; });
                if (shared) continue;
                for (std::size_t k = 0; k < n_; ++k) {
                    if (point_segment_distance(other.pts[j], c.pts[k], c.pts[(k + 1) % n_]) <= opt_.merge_distance) {
                        return false;
                    }
                }
            }
            for (std::size_t k = 0; k < n_; ++k) {
                if (c.merged[k]) continue;
                for (std::size_t j = 0; j < other.pts.size(); ++j) {
                    const Point2 a = other.pts[j];
                    const Point2 b = other.pts[(j + 1) % other.pts.size()];
                    if (point_segment_distance(c.pts[k], a, b) <= opt_.merge_distance) return false;
                }
            }
        }
        return true;
    }

    void commit(const Candidate& c) {
        if (++placements_ > opt_.node_budget) throw BudgetExceeded{};
        const std::size_t tid = tiles_.size();
        TileRecord t{c.angle, c.translation, c.reflected, c.pts, {}, 1e300, 1e300, -1e300, -1e300, {}, {},
                     adjacency_.size()};
        for (const Point2& p : c.pts) {
            t.min_x = std::min(t.min_x, p.x);
            t.min_y = std::min(t.min_y, p.y);
            t.max_x = std::max(t.max_x, p.x);
            t.max_y = std::max(t.max_y, p.y);
        }
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t vid;
            if (c.merged[k]) {
                vid = *c.merged[k];
            } else {
                vid = vertices_.size();
                vertices_.push_back({c.pts[k], 0.0, {}});
                vertex_cells_[cell_of(c.pts[k], kVertexCell)].push_back(vid);
                t.vertex_cells_created.push_back(vid);
            }
            vertices_[vid].angle_sum += proto_.angle(k);
            vertices_[vid].corners.push_back({tid, k});
            t.vids.push_back(vid);
        }
        neighbours_.emplace_back();
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t u = t.vids[k];
            const std::size_t v = t.vids[(k + 1) % n_];
            auto& slot = edges_[{std::min(u, v), std::max(u, v)}];
            for (const auto& [other, other_edge] : slot) {
                adjacency_.push_back({other, other_edge, tid, k});
                neighbours_[other].push_back(tid);
                neighbours_[tid].push_back(other);
            }
            slot.emplace_back(tid, k);
        }
        const CellKey lo = cell_of({t.min_x, t.min_y}, kTileCell);
        const CellKey hi = cell_of({t.max_x, t.max_y}, kTileCell);
        for (long long x = lo.first; x <= hi.first; ++x) {
            for (long long y = lo.second; y <= hi.second; ++y) {
                tile_cells_[{x, y}].push_back(tid);
                t.cells.push_back({x, y});
            }
        }
        tiles_.push_back(std::move(t));
    }

    void undo() {
        TileRecord& t = tiles_.back();
        const std::size_t tid = tiles_.size() - 1;
        for (const CellKey& key : t.cells) {
            auto it = tile_cells_.find(key);
            it->second.pop_back();
            if (it->second.empty()) tile_cells_.erase(it);
        }
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t u = t.vids[k];
            const std::size_t v = t.vids[(k + 1) % n_];
            auto it = edges_.find({std::min(u, v), std::max(u, v)});
            it->second.pop_back();
            if (it->second.empty()) edges_.erase(it);
        }
        for (std::size_t i = t.adjacency_before; i < adjacency_.size(); ++i) {
            neighbours_[adjacency_[i].tile_a].pop_back();
        }
        adjacency_.resize(t.adjacency_before);
        neighbours_.pop_back();
        for (std::size_t k = 0; k < n_; ++k) {
            VertexRecord& v = vertices_[t.vids[k]];
            v.corners.pop_back();
            v.angle_sum -= proto_.angle(k);
        }
        for (auto it = t.vertex_cells_created.rbegin(); it != t.vertex_cells_created.rend(); ++it) {
            auto cell = vertex_cells_.find(cell_of(vertices_[*it].pos, kVertexCell));
            cell->second.pop_back();
            if (cell->second.empty()) vertex_cells_.erase(cell);
        }
        vertices_.resize(vertices_.size() - t.vertex_cells_created.size());
        (void)tid;
        tiles_.pop_back();
    }

    std::vector<int> tile_rings() const {
        std::vector<int> ring(tiles_.size(), -1);
        std::deque<std::size_t> queue{0};
        ring[0] = 0;
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            for (std::size_t nb : neighbours_[t]) {
                if (ring[nb] < 0) {
                    ring[nb] = ring[t] + 1;
                    queue.push_back(nb);
                }
            }
        }
        return ring;
    }

    bool complete(std::size_t vid) const {
        return std::abs(kTwoPi - vertices_[vid].angle_sum) <= tol_.tol_classify;
    }

    // Position of local vertex k's counterclockwise predecessor on the tile.
    std::size_t ccw_prev(const TileRecord& t, std::size_t k) const {
        return t.reflected ? (k + 1) % n_ : (k + n_ - 1) % n_;
    }

    std::vector<Candidate> candidates_at(std::size_t vid) const {
        const VertexRecord& v = vertices_[vid];
        // First corner (in placement order) whose counterclockwise side is open.
        std::optional<std::size_t> u;
        for (const Corner& corner : v.corners) {
            const TileRecord& t = tiles_[corner.tile];
            const std::size_t prev = t.vids[ccw_prev(t, corner.local)];
            const auto it = edges_.find({std::min(vid, prev), std::max(vid, prev)});
            if (it->second.size() == 1) {
                u = prev;
                break;
            }
        }
        std::vector<Candidate> out;
        if (!u) return out;
        const Point2 vp = v.pos;
        const Point2 d = vertices_[*u].pos - vp;
        const double gap = kTwoPi - v.angle_sum;
        const double heading = std::atan2(d.y, d.x);
        // Edge index e of the new tile lies along v -> u: unreflected tiles put
        // local e at v, reflected tiles put local e + 1 at v.
        for (std::size_t e = 0; e < n_; ++e) {
            for (bool reflected : {false, true}) {
                if (reflected && !allow_reflections_) continue;
                const std::size_t at_v = reflected ? (e + 1) % n_ : e;
                const std::size_t at_u = reflected ? e : (e + 1) % n_;
                if (proto_.angle(at_v) > gap + tol_.tol_classify) continue;
                const Point2 a = local_point(at_v, reflected);
                const Point2 b = local_point(at_u, reflected);
                const double angle = heading - std::atan2(b.y - a.y, b.x - a.x);
                const Point2 translation = vp - rotate(a, angle);
                Candidate c = make_candidate(angle, translation, reflected);
                // Snap the two defining vertices to the existing ones.
                c.pts[at_v] = vp;
                c.pts[at_u] = vertices_[*u].pos;
                if (admissible(c)) out.push_back(std::move(c));
            }
        }
        return out;
    }

    bool search() {
        const auto ring = tile_rings();
        std::vector<std::size_t> targets;
        for (std::size_t t = 0; t < tiles_.size(); ++t) {
            if (ring[t] < 0 || ring[t] > rings_ - 1) continue;
            for (std::size_t vid : tiles_[t].vids) {
                if (!complete(vid)) targets.push_back(vid);
            }
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        if (targets.empty()) return true;

        std::vector<Candidate> best;
        bool have_best = false;
        for (std::size_t vid : targets) {
            auto list = candidates_at(vid);
            if (list.empty()) return false;
            if (!have_best || list.size() < best.size()) {
                best = std::move(list);
                have_best = true;
                if (best.size() == 1) break;
            }
        }
        for (const Candidate& c : best) {
            commit(c);
            if (search()) return true;
            undo();
        }
        return false;
    }

    Patch export_patch() const {
        Patch patch;
        patch.prototiles.push_back(proto_);
        const auto ring = tile_rings();
        for (std::size_t t = 0; t < tiles_.size(); ++t) {
            const TileRecord& r = tiles_[t];
            patch.tiles.push_back({0, r.angle, r.translation, r.reflected, ring[t]});
        }
        patch.adjacency = adjacency_;
        return patch;
    }
};

}  // namespace

GrowResult grow_patch(const EquilateralPolygon& p, int rings, bool allow_reflections,
                      const TolerancePolicy& tol, const GrowOptions& options) {
    if (rings < 1) throw Error(ErrorKind::InvalidInput, "rings must be at least 1");
    tol.validate();
    Grower grower(p, rings, allow_reflections, tol, options);
    return grower.run();
}

}  // namespace equitile
