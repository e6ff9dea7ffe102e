#include "equitile/type_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace equitile {

Rational::Rational(long long num, long long den) {
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator-(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

namespace {

constexpr std::array<std::string_view, kTypeCount> kTypeNames = {
    "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9",
    "P10", "P11", "P12", "P13", "P14", "P15", "H1", "H2", "H3"};

enum Label { A = 0, B, C, D, E, F };
enum EdgeLabel { a = 0, b, c, d, e, f };

AngleRelation rel(std::initializer_list<std::pair<int, Rational>> terms, Rational rhs_pi,
                  std::size_t n) {
    AngleRelation r;
    r.coefficients.assign(n, Rational{});
    for (const auto& [label, coef] : terms) r.coefficients[label] = r.coefficients[label] + coef;
    r.rhs_pi = rhs_pi;
    return r;
}

EdgeRelation edges(std::vector<int> lhs, std::vector<int> rhs) { return {std::move(lhs), std::move(rhs)}; }

std::vector<TypeCondition> build_catalog() {
    std::vector<TypeCondition> rows;
    const std::size_t p = 5;
    const std::size_t h = 6;

    rows.push_back({TypeId::P1, {rel({{D, 1}, {E, 1}}, 1, p)}, {}, {}});
    rows.push_back({TypeId::P2, {rel({{C, 1}, {E, 1}}, 1, p)}, {edges({a}, {d})}, {}});
    rows.push_back({TypeId::P3, {}, {edges({a}, {b}), edges({d}, {c, e})},
                    {{A, Rational(2, 3)}, {C, Rational(2, 3)}, {D, Rational(2, 3)}}});
    rows.push_back({TypeId::P4, {}, {edges({a}, {b}), edges({c}, {d})},
                    {{A, Rational(1, 2)}, {C, Rational(1, 2)}}});
    // Corrected row: C = 2A = 2pi/3.
    rows.push_back({TypeId::P5, {}, {edges({a}, {b}), edges({c}, {d})},
                    {{A, Rational(1, 3)}, {C, Rational(2, 3)}}});
    rows.push_back({TypeId::P6, {rel({{C, 1}, {E, 1}}, 1, p), rel({{A, 1}, {C, -2}}, 0, p)},
                    {edges({a}, {b}), edges({b}, {e}), edges({c}, {d})}, {}});
    rows.push_back({TypeId::P7, {rel({{B, 2}, {C, 1}}, 2, p), rel({{D, 2}, {A, 1}}, 2, p)},
                    {edges({a}, {b}), edges({b}, {c}), edges({c}, {d})}, {}});
    rows.push_back({TypeId::P8, {rel({{A, 2}, {B, 1}}, 2, p), rel({{D, 2}, {C, 1}}, 2, p)},
                    {edges({a}, {b}), edges({b}, {c}), edges({c}, {d})}, {}});
    rows.push_back({TypeId::P9, {rel({{E, 2}, {B, 1}}, 2, p), rel({{D, 2}, {C, 1}}, 2, p)},
                    {edges({a}, {b}), edges({b}, {c}), edges({c}, {d})}, {}});
    rows.push_back({TypeId::P10,
                    {rel({{A, 1}, {D, 1}}, 1, p), rel({{B, 2}, {D, -1}}, 1, p),
                     rel({{C, 2}, {D, 1}}, 2, p)},
                    {edges({a}, {e}), edges({e}, {b, d})},
                    {{E, Rational(1, 2)}}});
    rows.push_back({TypeId::P11, {rel({{C, 1}, {E, 1}}, 1, p), rel({{B, 2}, {C, 1}}, 2, p)},
                    {edges({d}, {e}), edges({e}, {a, a, c})},
                    {{A, Rational(1, 2)}}});
    rows.push_back({TypeId::P12, {rel({{C, 1}, {E, 1}}, 1, p), rel({{B, 2}, {C, 1}}, 2, p)},
                    {edges({a, a}, {c, e}), edges({c, e}, {d})},
                    {{A, Rational(1, 2)}}});
    rows.push_back({TypeId::P13, {rel({{B, 2}, {D, 1}}, 2, p), rel({{E, 2}, {D, 1}}, 2, p)},
                    {edges({c}, {d}), edges({c, c}, {e})},
                    {{A, Rational(1, 2)}, {C, Rational(1, 2)}}});
    rows.push_back({TypeId::P14, {rel({{E, 2}, {A, 1}}, 2, p), rel({{A, 1}, {C, 1}}, 1, p)},
                    {edges({b}, {c}), edges({c}, {a, a}), edges({a, a}, {d, d})},
                    {{D, Rational(1, 2)}}});
    rows.push_back({TypeId::P15, {},
                    {edges({b}, {d}), edges({d}, {e}), edges({a}, {b, b})},
                    {{A, Rational(1, 3)}, {B, Rational(3, 4)}, {C, Rational(7, 12)},
                     {D, Rational(1, 2)}, {E, Rational(5, 6)}}});

    rows.push_back({TypeId::H1, {rel({{A, 1}, {B, 1}, {F, 1}}, 2, h), rel({{C, 1}, {D, 1}, {E, 1}}, 2, h)},
                    {edges({c}, {f})}, {}});
    rows.push_back({TypeId::H2, {rel({{A, 1}, {C, 1}, {F, 1}}, 2, h), rel({{C, 1}, {D, 1}, {E, 1}}, 2, h)},
                    {edges({b}, {d})}, {}});
    rows.push_back({TypeId::H3, {rel({{A, 1}, {C, 1}, {E, 1}}, 2, h)},
                    {edges({a}, {f}), edges({b}, {c}), edges({d}, {e})},
                    {{B, Rational(2, 3)}, {D, Rational(2, 3)}, {F, Rational(2, 3)}}});
    return rows;
}

}  // namespace

std::string_view to_string(TypeId id) { return kTypeNames[static_cast<std::size_t>(id)]; }

TypeId parse_type_id(std::string_view text) {
    for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
        if (kTypeNames[i] == text) return static_cast<TypeId>(i);
    }
    throw Error(ErrorKind::UnknownType, "unknown type id '" + std::string(text) + "'");
}

std::size_t arity(TypeId id) { return static_cast<int>(id) >= static_cast<int>(TypeId::H1) ? 6 : 5; }

double AngleRelation::residual(std::span<const double> angles) const {
    double lhs = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (!coefficients[k].is_zero()) lhs += coefficients[k].to_double() * angles[k];
    }
    return std::abs(lhs - rhs_pi.to_double() * kPi);
}

double EdgeRelation::residual(std::span<const double> edge_lengths) const {
    double lhs_sum = 0.0;
    double rhs_sum = 0.0;
    for (int label : lhs) lhs_sum += edge_lengths[label];
    for (int label : rhs) rhs_sum += edge_lengths[label];
    return std::abs(lhs_sum - rhs_sum);
}

const std::vector<TypeCondition>& catalog() {
    static const std::vector<TypeCondition> rows = build_catalog();
    return rows;
}

const TypeCondition& catalog_entry(TypeId id) { return catalog()[static_cast<std::size_t>(id)]; }

std::size_t Relabeling::vertex(std::size_t label, std::size_t n) const {
    return reflected ? (shift + n - label % n) % n : (shift + label) % n;
}

std::size_t Relabeling::edge(std::size_t label, std::size_t n) const {
    return reflected ? (shift + 2 * n - label % n - 1) % n : (shift + label) % n;
}

ConditionResidual evaluate(const TypeCondition& condition, std::span<const double> angles,
                           std::span<const double> edge_lengths, const Relabeling& relabeling) {
    const std::size_t n = angles.size();
    std::vector<double> labeled_angles(n);
    std::vector<double> labeled_edges(n);
    for (std::size_t k = 0; k < n; ++k) {
        labeled_angles[k] = angles[relabeling.vertex(k, n)];
        labeled_edges[k] = edge_lengths[relabeling.edge(k, n)];
    }
    ConditionResidual out;
    for (const auto& r : condition.angle_relations) {
        out.angle = std::max(out.angle, r.residual(labeled_angles));
    }
    for (const auto& [label, value] : condition.fixed_angles) {
        out.angle = std::max(out.angle, std::abs(labeled_angles[label] - value.to_double() * kPi));
    }
    for (const auto& r : condition.edge_relations) {
        out.edge = std::max(out.edge, r.residual(labeled_edges));
    }
    return out;
}

std::vector<TypeMatch> match_types(const PolygonVertices& p, const TolerancePolicy& tol) {
    const std::size_t n = p.size();
    if (n != 5 && n != 6) {
        throw Error(ErrorKind::WrongArity, "type matching needs a pentagon or hexagon");
    }
    if (!is_strictly_convex(p, tol)) {
        throw Error(ErrorKind::InvalidPolygon, "type matching needs a strictly convex polygon");
    }
    const auto angles = interior_angles(p, tol);
    const auto lengths = edge_lengths(p);

    std::vector<TypeMatch> out;
    for (const auto& condition : catalog()) {
        if (condition.arity() != n) continue;
        for (bool reflected : {false, true}) {
            bool found = false;
            for (std::size_t shift = 0; shift < n && !found; ++shift) {
                const Relabeling relabeling{shift, reflected};
                const auto r = evaluate(condition, angles, lengths, relabeling);
                if (r.angle <= tol.tol_classify && r.edge <= tol.tol_geom) {
                    out.push_back({condition.id, relabeling});
                    found = true;
                }
            }
            if (found) break;
        }
    }
    return out;
}

FeasibilityEntry equilateral_feasible(TypeId id) {
    using enum Feasibility;
    switch (id) {
        case TypeId::P1: return {id, FeasibleWithCondition, "D+E=pi by definition"};
        case TypeId::P2: return {id, FeasibleWithCondition, "C+E=pi by definition"};
        case TypeId::P3: return {id, Excluded, "not equilateral by construction (d=c+e)"};
        case TypeId::P4: return {id, FeasibleWithCondition, "A+C=pi since A=C=pi/2 by definition"};
        case TypeId::P5: return {id, FeasibleWithCondition, "A+C=pi since C=2A=2pi/3 by definition"};
        case TypeId::P6: return {id, FeasibleWithCondition, "C+E=pi by definition"};
        case TypeId::P7: return {id, FeasibleWithCondition, "unique equilateral member P7"};
        case TypeId::P8: return {id, FeasibleWithCondition, "unique equilateral member P8 has B+E=pi"};
        case TypeId::P9: return {id, Excluded, "no convex equilateral solution"};
        case TypeId::P10:
        case TypeId::P11:
        case TypeId::P12:
        case TypeId::P13:
        case TypeId::P14:
        case TypeId::P15: return {id, Excluded, "not equilateral by construction"};
        case TypeId::H1: return {id, FeasibleWithCondition, "A+B+F=2pi by definition"};
        case TypeId::H2: return {id, FeasibleWithCondition, "A+C+F=2pi by definition"};
        case TypeId::H3: return {id, FeasibleWithCondition, "B=D=F=2pi/3: regular hexagon"};
    }
    throw Error(ErrorKind::UnknownType, "unknown type id");
}

}  // namespace equitile
