#include "equitile/constructors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <sstream>
#include <thread>

#include "equitile/shape_space.hpp"

namespace equitile {

double bisect(const BisectionProblem& problem) {
    double lo = problem.lo;
    double hi = problem.hi;
    double f_lo = problem.objective(lo);
    const double f_hi = problem.objective(hi);
    if (!(lo < hi) || f_lo == 0.0) {
        if (f_lo == 0.0) return lo;
        throw Error(ErrorKind::ConvergenceFailure, "empty bisection interval");
    }
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorKind::ConvergenceFailure, "objective does not change sign on the bracket");
    }
    for (int it = 0; it < problem.max_iterations; ++it) {
        if (hi - lo <= problem.tol_param) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        const double f_mid = problem.objective(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    throw Error(ErrorKind::ConvergenceFailure, "bisection exceeded its iteration cap");
}

// ---------------------------------------------------------------------------
// Type 8

double regular_pentagon_height() { return std::sqrt(5.0 + 2.0 * std::sqrt(5.0)) / 2.0; }

PolygonVertices p8_layout(double h) {
    const Point2 b{-0.5, 0.0};
    const Point2 c{0.5, 0.0};
    const Point2 e{0.0, h};
    const auto d = unit_apex(c, e);
    if (!d) throw Error(ErrorKind::InvalidInput, "apex height out of range");
    const Point2 a{-d->x, d->y};
    return PolygonVertices{{a, b, c, *d, e}};
}

P8State p8_state(double h) {
    const auto angles = interior_angles(p8_layout(h));
    return {h, angles[3] + 0.5 * angles[2] - 0.5 * kPi};
}

EquilateralPolygon construct_p8(const TolerancePolicy& tol) {
    const BisectionProblem problem{
        regular_pentagon_height(), 1.0 + std::sin(kPi / 3.0),
        [](double h) { return p8_state(h).tau - 0.5 * kPi; }};
    const double h = bisect(problem);
    return EquilateralPolygon(interior_angles(p8_layout(h)), tol);
}

// ---------------------------------------------------------------------------
// Type 7

PolygonVertices p7_layout(double x) {
    const Point2 a{0.0, 1.0};
    const Point2 b{0.0, 0.0};
    const Point2 d{x, 0.0};
    const auto c = unit_apex(b, d);
    const auto e = unit_apex(d, a);
    if (!c || !e) throw Error(ErrorKind::InvalidInput, "distance BD out of range");
    return PolygonVertices{{a, b, *c, d, *e}};
}

P7Objective p7_objective(double x) {
    const auto angles = interior_angles(p7_layout(x));
    return {0.5 * angles[0], angles[3]};
}

EquilateralPolygon construct_p7(const TolerancePolicy& tol) {
    const BisectionProblem problem{1.0, 2.0 * std::cos(kPi / 6.0),
                                   [](double x) { return p7_objective(x).sum() - kPi; }};
    const double x = bisect(problem);
    return EquilateralPolygon(interior_angles(p7_layout(x)), tol);
}

// ---------------------------------------------------------------------------
// Type 9

double type9_residual(std::span<const double> angles, const Relabeling& relabeling) {
    const auto at = [&](std::size_t label) { return angles[relabeling.vertex(label, 5)]; };
    return std::abs(2.0 * at(4) + at(1) - kTwoPi) + std::abs(2.0 * at(3) + at(2) - kTwoPi);
}

double type9_residual_min(std::span<const double> angles) {
    double best = std::numeric_limits<double>::infinity();
    for (bool reflected : {false, true}) {
        for (std::size_t shift = 0; shift < 5; ++shift) {
            best = std::min(best, type9_residual(angles, {shift, reflected}));
        }
    }
    return best;
}

namespace {

struct ScanResult {
    double min_residual = std::numeric_limits<double>::infinity();
    std::array<double, 5> argmin{};
    std::size_t points = 0;
};

// Rows are visited in increasing angle0 and columns in increasing angle1, so a
// strict improvement test keeps the lexicographically smallest argmin.
void scan_rows(std::size_t row_begin, std::size_t row_end, std::size_t steps, double margin,
               double grid_step, ScanResult& out) {
    for (std::size_t i = row_begin; i < row_end; ++i) {
        const double a0 = margin + static_cast<double>(i) * grid_step;
        for (std::size_t j = 0; j < steps; ++j) {
            const double a1 = margin + static_cast<double>(j) * grid_step;
            const auto chart = pentagon_chart(a0, a1);
            if (!chart || !convex_with_margin(chart->angles, margin)) continue;
            ++out.points;
            const double r = type9_residual_min(chart->angles);
            if (r < out.min_residual) {
                out.min_residual = r;
                out.argmin = chart->angles;
            }
        }
    }
}

}  // namespace

InfeasibilityCertificate search_type9(double grid_step, double convexity_margin, unsigned workers) {
    if (!(grid_step > 0.0) || grid_step > deg_to_rad(0.25)) {
        throw Error(ErrorKind::InvalidInput, "grid step must lie in (0, 0.25] degrees");
    }
    if (!(convexity_margin > 0.0) || convexity_margin >= 0.5 * kPi) {
        throw Error(ErrorKind::InvalidInput, "convexity margin out of range");
    }
    const auto steps = static_cast<std::size_t>(std::floor((kPi - 2.0 * convexity_margin) / grid_step)) + 1;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(steps));

    std::vector<ScanResult> partial(workers);
    {
        std::vector<std::jthread> threads;
        const std::size_t chunk = (steps + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(steps, w * chunk);
            const std::size_t end = std::min(steps, begin + chunk);
            threads.emplace_back(scan_rows, begin, end, steps, convexity_margin, grid_step,
                                 std::ref(partial[w]));
        }
    }

    InfeasibilityCertificate cert;
    cert.grid_step = grid_step;
    cert.convexity_margin = convexity_margin;
    cert.min_residual = std::numeric_limits<double>::infinity();
    for (const auto& p : partial) {
        cert.points_scanned += p.points;
        if (p.min_residual < cert.min_residual) {
            cert.min_residual = p.min_residual;
            cert.argmin = p.argmin;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------
// General constrained pentagon

EquilateralPolygon solve_equilateral_pentagon(std::span<const AngleRelation> relations,
                                              const std::array<double, 5>& guess,
                                              const TolerancePolicy& tol,
                                              std::optional<PinnedAngle> pinned) {
    for (const auto& r : relations) {
        if (r.coefficients.size() != 5) {
            throw Error(ErrorKind::InvalidInput, "pentagon relations need 5 coefficients");
        }
    }
    const std::size_t equations = relations.size() + (pinned ? 1 : 0);
    if (equations < 2) {
        throw Error(ErrorKind::InvalidInput, "need two relations, or one relation and a pinned angle");
    }
    if (pinned && pinned->vertex >= 5) {
        throw Error(ErrorKind::InvalidInput, "pinned vertex index out of range");
    }

    const auto residuals = [&](const Eigen::Vector2d& x) -> std::optional<Eigen::VectorXd> {
        const auto chart = pentagon_chart(x[0], x[1]);
        if (!chart) return std::nullopt;
        Eigen::VectorXd r(static_cast<Eigen::Index>(equations));
        Eigen::Index row = 0;
        for (const auto& rel : relations) {
            double lhs = 0.0;
            for (std::size_t k = 0; k < 5; ++k) lhs += rel.coefficients[k].to_double() * chart->angles[k];
            r[row++] = lhs - rel.rhs_pi.to_double() * kPi;
        }
        if (pinned) r[row] = chart->angles[pinned->vertex] - pinned->value;
        return r;
    };

    Eigen::Vector2d x(guess[0], guess[1]);
    auto r = residuals(x);
    if (!r) throw Error(ErrorKind::ConvergenceFailure, "initial guess lies outside the pentagon chart");

    constexpr double kFdStep = 1e-7;
    constexpr int kMaxIterations = 100;
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (r->cwiseAbs().maxCoeff() <= 0.5 * tol.tol_angle) {
            converged = true;
            break;
        }
        Eigen::MatrixXd jac(r->size(), 2);
        bool chart_ok = true;
        for (int c = 0; c < 2 && chart_ok; ++c) {
            Eigen::Vector2d step = Eigen::Vector2d::Zero();
            step[c] = kFdStep;
            const auto plus = residuals(x + step);
            const auto minus = residuals(x - step);
            if (!plus || !minus) {
                chart_ok = false;
                break;
            }
            jac.col(c) = (*plus - *minus) / (2.0 * kFdStep);
        }
        if (!chart_ok) break;
        const Eigen::Vector2d dx = jac.completeOrthogonalDecomposition().solve(-*r);

        double lambda = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
            const Eigen::Vector2d trial = x + lambda * dx;
            const auto rt = residuals(trial);
            if (rt && rt->norm() < r->norm()) {
                x = trial;
                r = rt;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (!converged) {
        std::ostringstream os;
        os << "residual " << r->cwiseAbs().maxCoeff() << " rad after damped Gauss-Newton";
        throw Error(ErrorKind::ConvergenceFailure, os.str());
    }

    const auto chart = pentagon_chart(x[0], x[1]);
    if (!convex_with_margin(chart->angles, tol.tol_angle)) {
        throw Error(ErrorKind::NonConvexSolution, "root leaves the strictly convex region");
    }
    return EquilateralPolygon(std::vector<double>(chart->angles.begin(), chart->angles.end()), tol);
}

// ---------------------------------------------------------------------------
// Tiling families

namespace {

constexpr double kFamilyMargin = 1e-9;

// First root of g over (lo, hi) found by sampling and bisection whose result
// passes `accept`. g returns nullopt where undefined.
template <typename G, typename Accept>
std::optional<double> first_accepted_root(G&& g, double lo, double hi, int samples, Accept&& accept) {
    std::optional<double> prev_x;
    std::optional<double> prev_g;
    for (int s = 1; s < samples; ++s) {
        const double x = lo + (hi - lo) * s / samples;
        const auto gx = g(x);
        if (gx && prev_g && ((*gx > 0.0) != (*prev_g > 0.0) || *gx == 0.0)) {
            double a = *prev_x;
            double b = x;
            double ga = *prev_g;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const auto gm = g(m);
                if (!gm) break;
                if ((*gm > 0.0) == (ga > 0.0)) {
                    a = m;
                    ga = *gm;
                } else {
                    b = m;
                }
            }
            const double root = 0.5 * (a + b);
            const auto groot = g(root);
            if (groot && std::abs(*groot) < 1e-10 && accept(root)) return root;
        }
        prev_x = gx ? std::optional<double>(x) : std::nullopt;
        prev_g = gx;
    }
    return std::nullopt;
}

struct PairLayout {
    std::size_t anchor;  // angle at anchor is the family parameter
    std::size_t offset;  // partner = anchor + offset (mod 5), offset in {1, 2}
};

PairLayout pair_layout(std::size_t i, std::size_t j) {
    if (i >= 5 || j >= 5 || i == j) {
        throw Error(ErrorKind::InvalidInput, "pentagon pair needs two distinct indices in 0..4");
    }
    const std::size_t d = (j + 5 - i) % 5;
    switch (d) {
        case 1: return {i, 1};
        case 4: return {j, 1};
        case 2: return {i, 2};
        default: return {j, 2};
    }
}

std::optional<std::array<double, 5>> pair_member(const PairLayout& layout, double theta) {
    if (layout.offset == 1) {
        const auto angles = pentagon_angles_at(layout.anchor, theta, kPi - theta);
        if (angles && convex_with_margin(*angles, kFamilyMargin)) return angles;
        return std::nullopt;
    }
    const std::size_t partner = (layout.anchor + 2) % 5;
    const auto g = [&](double phi) -> std::optional<double> {
        const auto angles = pentagon_angles_at(layout.anchor, theta, phi);
        if (!angles) return std::nullopt;
        return (*angles)[partner] + theta - kPi;
    };
    const auto accept = [&](double phi) {
        const auto angles = pentagon_angles_at(layout.anchor, theta, phi);
        return angles && convex_with_margin(*angles, kFamilyMargin);
    };
    const auto phi = first_accepted_root(g, 0.0, kPi, 360, accept);
    if (!phi) return std::nullopt;
    return pentagon_angles_at(layout.anchor, theta, *phi);
}

}  // namespace

PentagonFamily pentagon_pair_family(std::size_t i, std::size_t j) {
    const auto layout = pair_layout(i, j);
    constexpr int kSamples = 720;
    std::vector<bool> valid(kSamples + 1, false);
    for (int s = 1; s < kSamples; ++s) {
        valid[s] = pair_member(layout, kPi * s / kSamples).has_value();
    }
    int best_begin = -1;
    int best_len = 0;
    for (int s = 1; s < kSamples;) {
        if (!valid[s]) {
            ++s;
            continue;
        }
        int e = s;
        while (e < kSamples && valid[e]) ++e;
        if (e - s > best_len) {
            best_len = e - s;
            best_begin = s;
        }
        s = e;
    }
    if (best_begin < 0) {
        throw Error(ErrorKind::EmptyFamily, "no strictly convex member for this pair");
    }
    const auto refine = [&](double inside, double outside) {
        for (int it = 0; it < 50; ++it) {
            const double m = 0.5 * (inside + outside);
            if (pair_member(layout, m)) inside = m;
            else outside = m;
        }
        return inside;
    };
    const double first = kPi * best_begin / kSamples;
    const double last = kPi * (best_begin + best_len - 1) / kSamples;
    PentagonFamily fam;
    fam.i = i;
    fam.j = j;
    fam.lo = refine(first, kPi * (best_begin - 1) / kSamples);
    fam.hi = refine(last, kPi * (best_begin + best_len) / kSamples);
    return fam;
}

EquilateralPolygon sample_tiling_pentagon(std::size_t i, std::size_t j, double t,
                                          const TolerancePolicy& tol) {
    const auto layout = pair_layout(i, j);
    if (!(t > 0.0 && t < 1.0)) {
        throw Error(ErrorKind::EmptyFamily, "family parameter must lie strictly inside (0, 1)");
    }
    const auto fam = pentagon_pair_family(i, j);
    const double theta = fam.lo + t * (fam.hi - fam.lo);
    const auto angles = pair_member(layout, theta);
    if (!angles) {
        throw Error(ErrorKind::EmptyFamily, "no strictly convex member at this parameter");
    }
    return EquilateralPolygon(std::vector<double>(angles->begin(), angles->end()), tol);
}

EquilateralPolygon sample_tiling_hexagon(std::size_t i, std::size_t j, std::size_t k,
                                         std::array<double, 2> params,
                                         const TolerancePolicy& tol) {
    const std::array<std::size_t, 3> triple{i, j, k};
    if (i >= 6 || j >= 6 || k >= 6 || i == j || j == k || i == k) {
        throw Error(ErrorKind::InvalidInput, "hexagon triple needs three distinct indices in 0..5");
    }
    const auto in_triple = [&](std::size_t v) {
        return std::find(triple.begin(), triple.end(), v) != triple.end();
    };
    std::optional<std::size_t> anchor;
    std::size_t third = 0;
    for (std::size_t want : {2u, 3u, 4u}) {
        for (std::size_t u : triple) {
            const std::size_t next = (u + 1) % 6;
            if (!in_triple(next)) continue;
            for (std::size_t w : triple) {
                if (w != u && w != next && (w + 6 - u) % 6 == want) {
                    anchor = u;
                    third = w;
                }
            }
            if (anchor) break;
        }
        if (anchor) break;
    }
    if (!anchor) {
        throw Error(ErrorKind::InvalidInput, "at least two indices of the triple must share an edge");
    }
    if (!(params[0] > 0.0 && params[0] < 1.0 && params[1] > 0.0 && params[1] < 1.0)) {
        throw Error(ErrorKind::EmptyFamily, "hexagon parameters must lie in (0, 1)");
    }
    const double p = kPi * params[0];
    const double q = kPi * params[1];
    const double third_target = kTwoPi - p - q;

    std::optional<std::array<double, 6>> angles;
    if ((third + 6 - *anchor) % 6 == 2) {
        angles = hexagon_angles_at(*anchor, p, q, third_target);
    } else {
        const auto g = [&](double r) -> std::optional<double> {
            const auto a = hexagon_angles_at(*anchor, p, q, r);
            if (!a) return std::nullopt;
            return (*a)[third] - third_target;
        };
        const auto accept = [&](double r) {
            const auto a = hexagon_angles_at(*anchor, p, q, r);
            return a && convex_with_margin(*a, kFamilyMargin);
        };
        if (const auto r = first_accepted_root(g, 0.0, kPi, 360, accept)) {
            angles = hexagon_angles_at(*anchor, p, q, *r);
        }
    }
    if (!angles || !convex_with_margin(*angles, kFamilyMargin)) {
        throw Error(ErrorKind::EmptyFamily, "no strictly convex hexagon for these parameters");
    }
    return EquilateralPolygon(std::vector<double>(angles->begin(), angles->end()), tol);
}

}  // namespace equitile
