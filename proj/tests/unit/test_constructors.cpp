#include <random>

#include "doctest.h"
#include "equitile/constructors.hpp"

using namespace equitile;

namespace {

// Mirror-symmetric pentagon with base BC = 1 and apex height h: the angle at
// C is the base angle of triangle BCE plus that of the isosceles CDE.
struct SymmetricAngles {
    double c;
    double d;
};

SymmetricAngles symmetric_angles(double h) {
    const double chord = std::sqrt(0.25 + h * h);
    return {std::atan2(h, 0.5) + std::acos(chord / 2.0), kPi - 2.0 * std::acos(chord / 2.0)};
}

double first_root_by_scan(double lo, double hi, double step, double (*f)(double)) {
    double prev_x = lo;
    double prev = f(lo);
    for (double x = lo + step; x <= hi; x += step) {
        const double cur = f(x);
        if ((prev < 0) != (cur < 0)) return prev_x + (x - prev_x) * prev / (prev - cur);
        prev = cur;
        prev_x = x;
    }
    return std::nan("");
}

double angle_between(Point2 at, Point2 a, Point2 b) {
    const Point2 u = a - at;
    const Point2 v = b - at;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

// Type-7 layout from first principles: A=(0,1), B=(0,0), D=(x,0), C the
// unit apex below BD, E the unit apex beyond AD.
std::array<double, 5> type7_angles(double x) {
    const Point2 a{0, 1}, b{0, 0}, d{x, 0};
    const Point2 c{x / 2, -std::sqrt(1 - x * x / 4)};
    const double len = std::sqrt(x * x + 1);
    const double s = std::sqrt(1 - len * len / 4);
    const Point2 e{x / 2 + s / len, 0.5 + s * x / len};
    return {angle_between(a, e, b), angle_between(b, a, c), angle_between(c, b, d), angle_between(d, c, e),
            angle_between(e, d, a)};
}

double type7_objective(double x) {
    const auto ang = type7_angles(x);
    return ang[0] / 2 + ang[3] - kPi;
}

double type8_objective(double h) {
    const auto s = symmetric_angles(h);
    return 2 * s.d + s.c - kTwoPi;
}

constexpr double kDeg = kPi / 180.0;

}  // namespace

TEST_CASE("bracket values of the symmetric type-8 family") {
    CHECK(std::abs(rad_to_deg(p8_state(1.0 + std::sin(kPi / 3)).tau) - 105.0) <= 1e-6);
    CHECK(std::abs(rad_to_deg(p8_state(regular_pentagon_height()).tau) - 72.0) <= 1e-6);
    CHECK(regular_pentagon_height() == doctest::Approx(std::sqrt(5 + 2 * std::sqrt(5.0)) / 2));
}

TEST_CASE("tau increases across the bracket") {
    const double lo = regular_pentagon_height();
    const double hi = 1.0 + std::sin(kPi / 3);
    double prev = p8_state(lo).tau;
    int sign_changes = 0;
    for (int i = 1; i <= 1000; ++i) {
        const double h = lo + (hi - lo) * i / 1000.0;
        const double tau = p8_state(h).tau;
        CHECK(tau > prev);
        if ((prev - kPi / 2 < 0) != (tau - kPi / 2 < 0)) ++sign_changes;
        prev = tau;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("P8 agrees with an independent trigonometric scan") {
    const double h = first_root_by_scan(regular_pentagon_height(), 1.0 + std::sin(kPi / 3), 1e-6, type8_objective);
    REQUIRE(std::isfinite(h));
    CHECK(h == doctest::Approx(1.7472194017).epsilon(1e-9));
    const auto s = symmetric_angles(h);
    const auto p = construct_p8();
    // Layout order A, B, C, D, E with A, D the mirror pair next to the apex.
    CHECK(std::abs(p.angle(2) - s.c) < 1e-8);
    CHECK(std::abs(p.angle(3) - s.d) < 1e-8);
    CHECK(std::abs(p.angle(1) - s.c) < 1e-8);
    CHECK(std::abs(p.angle(0) - s.d) < 1e-8);
}

TEST_CASE("P8 satisfies both type-8 relations and B+E=pi") {
    const auto p = construct_p8();
    const double tau = p.angle(3) + p.angle(2) / 2 - kPi / 2;
    CHECK(std::abs(rad_to_deg(tau) - 90.0) <= 1e-7);
    CHECK(std::abs(2 * p.angle(0) + p.angle(1) - kTwoPi) < 1e-9);
    CHECK(std::abs(rad_to_deg(p.angle(1) + p.angle(4)) - 180.0) <= 1e-6);
    const double expected[] = {130.646, 98.707, 98.707, 130.646, 81.293};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(rad_to_deg(p.angle(k)) - expected[k]) < 1e-3);
}

TEST_CASE("type-7 objective at the bracket ends and the midpoint") {
    const auto at1 = p7_objective(1.0);
    CHECK(std::abs(rad_to_deg(at1.half_a) - 45.0) <= 1e-6);
    CHECK(std::abs(rad_to_deg(at1.d) - 150.0) <= 1e-6);
    const auto at_root3 = p7_objective(2 * std::cos(kPi / 6));
    CHECK(std::abs(rad_to_deg(at_root3.half_a) - 30.0) <= 1e-6);
    CHECK(std::abs(rad_to_deg(at_root3.d) - 60.0) <= 1e-6);
    CHECK(std::abs(rad_to_deg(p7_objective(0.5).half_a) - 41.29) <= 0.01);
}

TEST_CASE("type-7 objective has a single sign change on the bracket") {
    const double lo = 1.0;
    const double hi = 2 * std::cos(kPi / 6);
    int changes = 0;
    double prev = p7_objective(lo).sum() - kPi;
    for (int i = 1; i <= 1000; ++i) {
        const double cur = p7_objective(lo + (hi - lo) * i / 1000.0).sum() - kPi;
        CHECK(cur < prev);
        if ((prev < 0) != (cur < 0)) ++changes;
        prev = cur;
    }
    CHECK(changes == 1);
}

TEST_CASE("P7 agrees with an independent layout scan") {
    const double x = first_root_by_scan(1.0, 2 * std::cos(kPi / 6), 1e-6, type7_objective);
    REQUIRE(std::isfinite(x));
    CHECK(x == doctest::Approx(1.15967613).epsilon(1e-7));
    const auto want = type7_angles(x);
    const auto p = construct_p7();
    for (int k = 0; k < 5; ++k) CHECK(std::abs(p.angle(k) - want[k]) < 1e-7);
    const double published[] = {89.26, 144.56, 70.88, 135.37, 99.93};
    for (int k = 0; k < 5; ++k) CHECK(std::abs(rad_to_deg(p.angle(k)) - published[k]) <= 0.02);
    CHECK(std::abs(2 * p.angle(1) + p.angle(2) - kTwoPi) < 1e-9);
    CHECK(std::abs(2 * p.angle(3) + p.angle(0) - kTwoPi) < 1e-9);
}

TEST_CASE("bisection rejects a bracket without a sign change") {
    const BisectionProblem bad{0.0, 1.0, [](double x) { return x + 1.0; }};
    CHECK_THROWS_AS(bisect(bad), Error);
    const BisectionProblem good{0.0, 2.0, [](double x) { return x * x - 2.0; }};
    CHECK(bisect(good) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("type-9 scan floor") {
    const auto cert = search_type9();
    // Recorded from the scan at 0.1 degree with margin 1e-3 rad.
    CHECK(cert.min_residual == doctest::Approx(0.11478011402674149).epsilon(1e-12));
    CHECK(cert.min_residual > 0.0);
    CHECK(cert.points_scanned == 861215u);
    CHECK(type9_residual_min(cert.argmin) == doctest::Approx(cert.min_residual).epsilon(1e-12));
    double sum = 0.0;
    for (double a : cert.argmin) {
        CHECK(a > 1e-3);
        CHECK(a < kPi - 1e-3);
        sum += a;
    }
    CHECK(sum == doctest::Approx(3 * kPi));
}

TEST_CASE("type-9 scan does not depend on the worker count") {
    const auto one = search_type9(0.25 * kDeg, 1e-3, 1);
    const auto many = search_type9(0.25 * kDeg, 1e-3, 5);
    CHECK(one.min_residual == many.min_residual);
    CHECK(one.argmin == many.argmin);
    CHECK(one.points_scanned == many.points_scanned);
}

TEST_CASE("type-9 scan validates its step") {
    CHECK_THROWS_AS(search_type9(0.0), Error);
    CHECK_THROWS_AS(search_type9(0.5 * kDeg), Error);
}

TEST_CASE("type-9 residual is positive on the special pentagons") {
    CHECK(type9_residual_min(construct_p7().angles()) > 0.01);
    CHECK(type9_residual_min(construct_p8().angles()) > 0.01);
}

namespace {

// Equilateral pentagon with right angles at A and C: A at the origin, AB
// along +x, E straight above A. Returns |DE| - 1 for the angle at B.
double right_right_gap(double beta) {
    const Point2 b{1, 0};
    const Point2 e{0, 1};
    const double h1 = kPi - beta;
    const Point2 c = b + unit_vector(h1);
    const Point2 d = c + unit_vector(h1 + kPi / 2);
    return distance(d, e) - 1.0;
}

}  // namespace

TEST_CASE("constrained solver matches a one-dimensional scan for A = C = pi/2") {
    std::vector<double> roots;
    double prev = right_right_gap(0.01);
    for (double beta = 0.01 + 1e-5; beta < kPi; beta += 1e-5) {
        const double cur = right_right_gap(beta);
        if ((prev < 0) != (cur < 0)) roots.push_back(beta - 1e-5 * cur / (cur - prev));
        prev = cur;
    }
    REQUIRE_FALSE(roots.empty());

    AngleRelation right_a{{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)}, Rational(1, 2)};
    AngleRelation right_c{{Rational(0), Rational(0), Rational(1), Rational(0), Rational(0)}, Rational(1, 2)};
    const std::vector<AngleRelation> rel{right_a, right_c};
    const std::array<double, 5> guess{kPi / 2, 2.2, kPi / 2, 2.2, 1.9};
    const auto p = solve_equilateral_pentagon(rel, guess);
    CHECK(std::abs(p.angle(0) - kPi / 2) < 1e-9);
    CHECK(std::abs(p.angle(2) - kPi / 2) < 1e-9);
    double best = 1e9;
    for (double r : roots) best = std::min(best, std::abs(r - p.angle(1)));
    CHECK(best < 1e-7);
}

TEST_CASE("constrained solver needs two equations") {
    AngleRelation one{{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)}, Rational(1, 2)};
    const std::vector<AngleRelation> rel{one};
    CHECK_THROWS_AS(solve_equilateral_pentagon(rel, {1.9, 1.9, 1.9, 1.9, 1.9}), Error);
    CHECK_NOTHROW(solve_equilateral_pentagon(rel, {kPi / 2, 2.2, kPi / 2, 2.2, 1.9}, {}, PinnedAngle{2, kPi / 2}));
}

TEST_CASE("pentagon pair families") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> t(0.01, 0.99);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) {
            const auto fam = pentagon_pair_family(i, j);
            CHECK(fam.lo < fam.hi);
            for (int trial = 0; trial < 20; ++trial) {
                const auto p = sample_tiling_pentagon(i, j, t(rng));
                CHECK(std::abs(p.angle(i) + p.angle(j) - kPi) < 1e-9);
                for (double a : p.angles()) {
                    CHECK(a > 0.0);
                    CHECK(a < kPi);
                }
                CHECK(norm(walk_residual(p.angles())) < 1e-9);
            }
            CHECK_THROWS_AS(sample_tiling_pentagon(i, j, 0.0), Error);
            CHECK_THROWS_AS(sample_tiling_pentagon(i, j, 1.0), Error);
        }
    }
    CHECK(sample_tiling_pentagon(0, 2, 0.3).angles() == sample_tiling_pentagon(0, 2, 0.3).angles());
}

TEST_CASE("hexagon triple families") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int built = 0;
    for (int trial = 0; trial < 400; ++trial) {
        try {
            const auto h = sample_tiling_hexagon(1, 2, 4, {u(rng), u(rng)});
            CHECK(std::abs(h.angle(1) + h.angle(2) + h.angle(4) - kTwoPi) < 1e-9);
            CHECK(norm(walk_residual(h.angles())) < 1e-9);
            ++built;
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::EmptyFamily);
        }
    }
    CHECK(built > 40);
    try {
        sample_tiling_hexagon(0, 2, 4, {0.5, 0.5});
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}
