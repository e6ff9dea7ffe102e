#include "equitile/rotational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <string>

namespace equitile {

namespace {

using Key = std::pair<long long, long long>;

Key key_of(Point2 p) { return {std::llround(p.x * 1e6), std::llround(p.y * 1e6)}; }

Point2 honeycomb_vertex(Point2 center, int k) { return center + unit_vector(deg_to_rad(90.0 + 60.0 * k)); }

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConstructionFailure, what); }

// One 120-degree sector of the honeycomb around the vertex at the origin.
// Vertex 0 is the origin and stays fixed; the others are unknowns.
struct Sector {
    std::vector<std::array<std::size_t, 6>> tiles;  // counterclockwise vertex ids
    std::vector<int> ring;                          // 0-based
    std::vector<Point2> start;                      // honeycomb positions, index 0 = origin
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    // (a, b): vertex a is vertex b turned by one wedge.
    std::vector<std::pair<std::size_t, std::size_t>> images;
};

Sector build_sector(int rings) {
    const double s3 = std::sqrt(3.0);
    const Point2 first{s3 / 2.0, 0.5};
    const Point2 step_a{s3, 0.0};
    const Point2 step_b{s3 / 2.0, 1.5};
    const int span = 3 * rings + 3;

    std::vector<Point2> centers;
    for (int a = -span; a <= span; ++a) {
        for (int b = -span; b <= span; ++b) centers.push_back(first + static_cast<double>(a) * step_a + static_cast<double>(b) * step_b);
    }
    std::vector<std::array<Key, 6>> keys(centers.size());
    std::map<std::pair<Key, Key>, std::vector<std::size_t>> edge_tiles;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (int k = 0; k < 6; ++k) keys[i][k] = key_of(honeycomb_vertex(centers[i], k));
        for (int k = 0; k < 6; ++k) {
            const Key u = keys[i][k];
            const Key v = keys[i][(k + 1) % 6];
            edge_tiles[{std::min(u, v), std::max(u, v)}].push_back(i);
        }
    }
    const Key origin = key_of({0.0, 0.0});
    std::vector<int> ring(centers.size(), -1);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (std::find(keys[i].begin(), keys[i].end(), origin) != keys[i].end()) {
            ring[i] = 0;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        if (ring[i] + 1 >= rings) continue;
        for (int k = 0; k < 6; ++k) {
            const Key u = keys[i][k];
            const Key v = keys[i][(k + 1) % 6];
            for (std::size_t j : edge_tiles[{std::min(u, v), std::max(u, v)}]) {
                if (ring[j] < 0) {
                    ring[j] = ring[i] + 1;
                    queue.push_back(j);
                }
            }
        }
    }
    const auto sector_of = [](Point2 c) {
        double deg = rad_to_deg(std::atan2(c.y, c.x)) + 30.0 + 1e-7;
        deg = std::fmod(deg + 720.0, 360.0);
        return static_cast<int>(deg / 120.0);
    };

    Sector s;
    std::map<Key, std::size_t> ids{{origin, 0}};
    s.start.push_back({0.0, 0.0});
    std::map<Key, bool> in_next_sector;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (ring[i] < 0) continue;
        const int sector = sector_of(centers[i]);
        if (sector == 1) {
            for (const Key& k : keys[i]) in_next_sector[k] = true;
        }
        if (sector != 0) continue;
        std::array<std::size_t, 6> tile{};
        for (int k = 0; k < 6; ++k) {
            auto [it, inserted] = ids.emplace(keys[i][k], s.start.size());
            if (inserted) s.start.push_back(honeycomb_vertex(centers[i], k));
            tile[k] = it->second;
        }
        s.tiles.push_back(tile);
        s.ring.push_back(ring[i]);
    }
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    for (const auto& tile : s.tiles) {
        for (int k = 0; k < 6; ++k) {
            const std::size_t u = tile[k];
            const std::size_t v = tile[(k + 1) % 6];
            if (!seen.emplace(std::pair{std::min(u, v), std::max(u, v)}, true).second) continue;
            s.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
    }
    for (const auto& [key, id] : ids) {
        if (id == 0 || !in_next_sector.count(key)) continue;
        const Point2 back = rotate(s.start[id], -kTwoPi / 3.0);
        const auto it = ids.find(key_of(back));
        if (it == ids.end()) fail("sector boundary is not closed under rotation");
        s.images.emplace_back(id, it->second);
    }
    return s;
}

class WedgeSolver {
public:
    explicit WedgeSolver(const Sector& s) : s_(s), unknowns_(2 * (s.start.size() - 1)) {}

    Eigen::VectorXd initial() const {
        Eigen::VectorXd x(unknowns_);
        for (std::size_t v = 1; v < s_.start.size(); ++v) {
            x[2 * (v - 1)] = s_.start[v].x;
            x[2 * (v - 1) + 1] = s_.start[v].y;
        }
        return x;
    }

    Point2 at(const Eigen::VectorXd& x, std::size_t v) const {
        return v == 0 ? Point2{0.0, 0.0} : Point2{x[2 * (v - 1)], x[2 * (v - 1) + 1]};
    }

    void evaluate(const Eigen::VectorXd& x, double wedge, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
        const std::size_t rows = s_.edges.size() + 2 * s_.images.size();
        r.resize(static_cast<Eigen::Index>(rows));
        if (jac) jac->setZero(static_cast<Eigen::Index>(rows), unknowns_);
        const double c = std::cos(wedge);
        const double sn = std::sin(wedge);
        Eigen::Index row = 0;
        for (const auto& [a, b] : s_.edges) {
            const Point2 d = at(x, a) - at(x, b);
            r[row] = dot(d, d) - 1.0;
            if (jac) {
                if (a) {
                    (*jac)(row, 2 * (a - 1)) += 2 * d.x;
                    (*jac)(row, 2 * (a - 1) + 1) += 2 * d.y;
                }
                if (b) {
                    (*jac)(row, 2 * (b - 1)) -= 2 * d.x;
                    (*jac)(row, 2 * (b - 1) + 1) -= 2 * d.y;
                }
            }
            ++row;
        }
        for (const auto& [a, b] : s_.images) {
            const Point2 pa = at(x, a);
            const Point2 pb = at(x, b);
            r[row] = pa.x - (c * pb.x - sn * pb.y);
            r[row + 1] = pa.y - (sn * pb.x + c * pb.y);
            if (jac) {
                (*jac)(row, 2 * (a - 1)) += 1.0;
                (*jac)(row + 1, 2 * (a - 1) + 1) += 1.0;
                if (b) {
                    (*jac)(row, 2 * (b - 1)) -= c;
                    (*jac)(row, 2 * (b - 1) + 1) += sn;
                    (*jac)(row + 1, 2 * (b - 1)) -= sn;
                    (*jac)(row + 1, 2 * (b - 1) + 1) -= c;
                }
            }
            row += 2;
        }
    }

    // Damped Gauss-Newton with minimum-norm steps.
    bool restore(Eigen::VectorXd& x, double wedge, int max_iterations = 60) const {
        Eigen::VectorXd r;
        Eigen::MatrixXd jac;
        for (int it = 0; it < max_iterations; ++it) {
            evaluate(x, wedge, r, &jac);
            const double err = r.lpNorm<Eigen::Infinity>();
            if (err < kSolveTol) return true;
            const Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
            double step = 1.0;
            bool moved = false;
            Eigen::VectorXd trial_r;
            while (step > 1e-6) {
                const Eigen::VectorXd trial = x + step * dx;
                evaluate(trial, wedge, trial_r, nullptr);
                if (trial_r.norm() < r.norm()) {
                    x = trial;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) return false;
        }
        evaluate(x, wedge, r, nullptr);
        return r.lpNorm<Eigen::Infinity>() < kSolveTol;
    }

    std::vector<double> tile_angles(const Eigen::VectorXd& x, std::size_t t) const {
        std::vector<double> out(6);
        const auto& tile = s_.tiles[t];
        for (int k = 0; k < 6; ++k) {
            const Point2 prev = at(x, tile[(k + 5) % 6]);
            const Point2 here = at(x, tile[k]);
            const Point2 next = at(x, tile[(k + 1) % 6]);
            const Point2 in = here - prev;
            const Point2 out_dir = next - here;
            out[k] = kPi - std::atan2(cross(in, out_dir), dot(in, out_dir));
        }
        return out;
    }

    double convexity_margin(const Eigen::VectorXd& x) const {
        double margin = kPi;
        for (std::size_t t = 0; t < s_.tiles.size(); ++t) {
            for (double a : tile_angles(x, t)) margin = std::min({margin, a, kPi - a});
        }
        return margin;
    }

    double barrier(const Eigen::VectorXd& x) const {
        double f = 0.0;
        for (std::size_t t = 0; t < s_.tiles.size(); ++t) {
            for (double a : tile_angles(x, t)) f += std::exp(kBarrier * (a - kPi)) + std::exp(-kBarrier * a);
        }
        return f;
    }

    // Descends the barrier along the constraint manifold: gradient projected
    // on the Jacobian's null space, then Gauss-Newton back onto the manifold.
    void fair(Eigen::VectorXd& x, double wedge, int rounds) const {
        Eigen::VectorXd r;
        Eigen::MatrixXd jac;
        for (int round = 0; round < rounds; ++round) {
            const double f0 = barrier(x);
            Eigen::VectorXd g(unknowns_);
            for (Eigen::Index i = 0; i < unknowns_; ++i) {
                Eigen::VectorXd hi = x;
                Eigen::VectorXd lo = x;
                hi[i] += 1e-7;
                lo[i] -= 1e-7;
                g[i] = (barrier(hi) - barrier(lo)) / 2e-7;
            }
            evaluate(x, wedge, r, &jac);
            const Eigen::MatrixXd gram = jac * jac.transpose();
            g -= jac.transpose() * gram.completeOrthogonalDecomposition().solve(jac * g);
            if (g.norm() < 1e-10) return;
            double step = 0.1;
            bool improved = false;
            while (step > 1e-8) {
                Eigen::VectorXd trial = x - step * g;
                if (restore(trial, wedge, 30) && barrier(trial) < f0) {
                    x = trial;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) return;
        }
    }

    static constexpr double kSolveTol = 1e-13;
    static constexpr double kBarrier = 12.0;

private:
    const Sector& s_;
    Eigen::Index unknowns_;
};

Patch regular_honeycomb(int rings, const TolerancePolicy& tol) {
    Patch patch;
    patch.prototiles.emplace_back(std::vector<double>(6, 2.0 * kPi / 3.0), tol);
    const double s3 = std::sqrt(3.0);
    // Axial coordinates; ring = hex distance from the centre.
    std::vector<std::pair<int, int>> cells;
    for (int q = -rings + 1; q < rings; ++q) {
        for (int r = -rings + 1; r < rings; ++r) {
            const int d = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
            if (d < rings) cells.emplace_back(q, r);
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        const auto dist = [](const auto& c) {
            return std::max({std::abs(c.first), std::abs(c.second), std::abs(c.first + c.second)});
        };
        return dist(a) < dist(b);
    });
    // Pointy-top hexagon with vertices at 30 + 60k degrees around its centre;
    // local vertex 0 at -90 degrees puts edge 0 at angle 30.
    for (const auto& [q, r] : cells) {
        const Point2 center{s3 * (q + r / 2.0), 1.5 * r};
        const int ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
        const Point2 v0 = center + unit_vector(deg_to_rad(-90.0));
        patch.tiles.push_back({0, deg_to_rad(30.0), v0, false, ring});
    }
    return patch;
}

// Adjacency from coinciding edge endpoints.
void link_edges(Patch& patch) {
    std::map<std::pair<Key, Key>, std::pair<std::size_t, std::size_t>> open;
    for (std::size_t t = 0; t < patch.tiles.size(); ++t) {
        const auto pts = placed_vertices(patch, t);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            Key u = key_of(pts[k]);
            Key v = key_of(pts[(k + 1) % pts.size()]);
            if (v < u) std::swap(u, v);
            const auto [it, inserted] = open.emplace(std::pair{u, v}, std::pair{t, k});
            if (!inserted) patch.adjacency.push_back({it->second.first, it->second.second, t, k});
        }
    }
}

}  // namespace

Patch rotational_hexagon_tiling(int n, int rings, const TolerancePolicy& tol) {
    if (n < 3) throw Error(ErrorKind::InvalidInput, "rotational order must be at least 3");
    if (rings < 1) throw Error(ErrorKind::InvalidInput, "rings must be at least 1");
    tol.validate();

    Patch patch;
    if (n == 6) {
        patch = regular_honeycomb(rings, tol);
        link_edges(patch);
        return patch;
    }

    const Sector sector = build_sector(rings);
    const WedgeSolver solver(sector);
    Eigen::VectorXd x = solver.initial();

    // Continuation from the honeycomb (wedge 120 degrees) to the target.
    const double target = kTwoPi / n;
    double wedge = kTwoPi / 3.0;
    double step = deg_to_rad(5.0);
    while (std::abs(wedge - target) > 1e-15) {
        const double next = target < wedge ? std::max(target, wedge - step) : std::min(target, wedge + step);
        Eigen::VectorXd trial = x;
        if (solver.restore(trial, next) && solver.convexity_margin(trial) > 0.0) {
            x = trial;
            wedge = next;
            if (solver.convexity_margin(x) < 0.1) solver.fair(x, wedge, 40);
            step = std::min(step * 1.5, deg_to_rad(5.0));
        } else {
            step *= 0.5;
            if (step < deg_to_rad(1e-3)) fail("wedge solve did not converge for n = " + std::to_string(n));
        }
    }
    if (n != 3) solver.fair(x, wedge, 200);
    if (!solver.restore(x, wedge)) fail("wedge solve did not converge for n = " + std::to_string(n));
    if (solver.convexity_margin(x) <= 0.0) fail("wedge solve left a non-convex hexagon");

    // Prototiles for the wedge tiles; copies of the wedge reuse them.
    struct WedgeTile {
        std::size_t proto;
        double angle;
        Point2 origin;
        int ring;
    };
    std::vector<WedgeTile> wedge_tiles;
    for (std::size_t t = 0; t < sector.tiles.size(); ++t) {
        const auto angles = solver.tile_angles(x, t);
        std::size_t proto = patch.prototiles.size();
        for (std::size_t p = 0; p < patch.prototiles.size(); ++p) {
            const auto& other = patch.prototiles[p].angles();
            bool same = true;
            for (std::size_t k = 0; k < 6 && same; ++k) same = std::abs(other[k] - angles[k]) <= 1e-12;
            if (same) {
                proto = p;
                break;
            }
        }
        if (proto == patch.prototiles.size()) {
            try {
                patch.prototiles.emplace_back(angles, tol);
            } catch (const Error& e) {
                fail(std::string("solved hexagon is invalid: ") + e.what());
            }
        }
        const Point2 p0 = solver.at(x, sector.tiles[t][0]);
        const Point2 p1 = solver.at(x, sector.tiles[t][1]);
        wedge_tiles.push_back({proto, std::atan2(p1.y - p0.y, p1.x - p0.x), p0, sector.ring[t]});
    }
    // Ring-major order, wedge copies inside each ring.
    for (int r = 0; r < rings; ++r) {
        for (int m = 0; m < n; ++m) {
            const double turn = target * m;
            for (const WedgeTile& w : wedge_tiles) {
                if (w.ring != r) continue;
                patch.tiles.push_back({w.proto, w.angle + turn, rotate(w.origin, turn), false, r});
            }
        }
    }
    link_edges(patch);
    if (rotation_symmetry_error(patch, target) > std::max(tol.tol_geom, 1e-9)) {
        fail("assembled patch is not rotationally symmetric");
    }
    return patch;
}

}  // namespace equitile
