#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equitile/geometry.hpp"

namespace equitile {

/// Exact rational number with a positive denominator, always reduced.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long num, long long den = 1);

    long long num() const { return num_; }
    long long den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);

private:
    long long num_ = 0;
    long long den_ = 1;
};

enum class TypeId { P1, P2, P3, P4, P5, P6, P7, P8, P9, P10, P11, P12, P13, P14, P15, H1, H2, H3 };

inline constexpr std::size_t kTypeCount = 18;

std::string_view to_string(TypeId id);
/// Parses "P1".."P15", "H1".."H3"; throws UnknownType otherwise.
TypeId parse_type_id(std::string_view text);
/// Number of vertices of polygons of the given type.
std::size_t arity(TypeId id);

/// sum_k coefficients[k] * angle_k = rhs * pi. Vertex label k is A + k.
struct AngleRelation {
    std::vector<Rational> coefficients;
    Rational rhs_pi;

    double residual(std::span<const double> angles) const;
};

/// Edge-length relation: sum of lhs labels (with multiplicity) equals the sum
/// of rhs labels. Edge label k is a + k; edge k joins vertex k to vertex k+1.
struct EdgeRelation {
    std::vector<int> lhs;
    std::vector<int> rhs;

    double residual(std::span<const double> edges) const;
    /// True if the relation holds when every edge has the same length.
    bool holds_for_equal_edges() const { return lhs.size() == rhs.size(); }
};

struct TypeCondition {
    TypeId id;
    std::vector<AngleRelation> angle_relations;
    std::vector<EdgeRelation> edge_relations;
    /// Vertex label -> fixed angle as a multiple of pi.
    std::map<int, Rational> fixed_angles;

    std::size_t arity() const { return equitile::arity(id); }
};

/// The 15 pentagon types and 3 hexagon types, in that order.
const std::vector<TypeCondition>& catalog();
const TypeCondition& catalog_entry(TypeId id);

/// A relabeling: label k refers to polygon vertex (shift + k) mod n, or to
/// (shift - k) mod n when reflected.
struct Relabeling {
    std::size_t shift = 0;
    bool reflected = false;

    std::size_t vertex(std::size_t label, std::size_t n) const;
    std::size_t edge(std::size_t label, std::size_t n) const;
};

/// Worst residual of `condition` under `relabeling`; angle and edge parts are
/// returned separately so each can be held to its own tolerance.
struct ConditionResidual {
    double angle = 0.0;
    double edge = 0.0;
};

ConditionResidual evaluate(const TypeCondition& condition, std::span<const double> angles,
                           std::span<const double> edges, const Relabeling& relabeling);

struct TypeMatch {
    TypeId id;
    Relabeling relabeling;
};

/// All catalog types satisfied by some relabeling of `p` (first relabeling in
/// (reflected, shift) order is reported).
std::vector<TypeMatch> match_types(const PolygonVertices& p, const TolerancePolicy& tol = {});

enum class Feasibility { FeasibleWithCondition, Excluded };

struct FeasibilityEntry {
    TypeId id;
    Feasibility status;
    std::string reason;
};

/// Whether the type admits equilateral strictly convex members, and why.
FeasibilityEntry equilateral_feasible(TypeId id);

}  // namespace equitile
