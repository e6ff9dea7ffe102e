#include "equitile/classifier.hpp"

#include <sstream>

#include "equitile/constructors.hpp"

namespace equitile {

std::string_view to_string(VerdictReason reason) {
    switch (reason) {
        case VerdictReason::TriangleOrQuadrangle: return "TriangleOrQuadrangle";
        case VerdictReason::PentagonPairSum: return "PentagonPairSum";
        case VerdictReason::PentagonP7: return "PentagonP7";
        case VerdictReason::HexagonTriple: return "HexagonTriple";
        case VerdictReason::TooManyVertices: return "TooManyVertices";
        case VerdictReason::NoConditionMet: return "NoConditionMet";
    }
    return "Unknown";
}

namespace {

const std::vector<double>& p7_angles() {
    static const std::vector<double> angles = construct_p7().angles();
    return angles;
}

bool similar_to_p7(const std::vector<double>& angles, double tol) {
    const auto& ref = p7_angles();
    for (bool reflected : {false, true}) {
        for (std::size_t shift = 0; shift < 5; ++shift) {
            const auto candidate = relabel(angles, shift, reflected);
            bool all = true;
            for (std::size_t k = 0; k < 5 && all; ++k) all = std::abs(candidate[k] - ref[k]) <= tol;
            if (all) return true;
        }
    }
    return false;
}

bool cyclically_adjacent(std::size_t a, std::size_t b, std::size_t n) {
    return (a + 1) % n == b || (b + 1) % n == a;
}

}  // namespace

Verdict classify(const EquilateralPolygon& p, const TolerancePolicy& tol) {
    const auto& angles = p.angles();
    const std::size_t n = angles.size();
    for (double a : angles) {
        if (!(a > 0.0 && a < kPi)) {
            throw Error(ErrorKind::InvalidPolygon, "classification needs a strictly convex polygon");
        }
    }

    Verdict v;
    v.vertex_count = n;
    if (n <= 4) {
        v.tiles = true;
        v.reason = VerdictReason::TriangleOrQuadrangle;
        return v;
    }
    if (n == 5) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(angles[i] + angles[j] - kPi) <= tol.tol_classify) {
                    v.tiles = true;
                    v.reason = VerdictReason::PentagonPairSum;
                    v.witness = {i, j, 0};
                    v.witness_size = 2;
                    return v;
                }
            }
        }
        if (similar_to_p7(angles, tol.tol_classify)) {
            v.tiles = true;
            v.reason = VerdictReason::PentagonP7;
            return v;
        }
        return v;
    }
    if (n == 6) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                for (std::size_t k = j + 1; k < n; ++k) {
                    const bool adjacent = cyclically_adjacent(i, j, n) ||
                                          cyclically_adjacent(j, k, n) ||
                                          cyclically_adjacent(i, k, n);
                    if (!adjacent) continue;
                    if (std::abs(angles[i] + angles[j] + angles[k] - kTwoPi) <= tol.tol_classify) {
                        v.tiles = true;
                        v.reason = VerdictReason::HexagonTriple;
                        v.witness = {i, j, k};
                        v.witness_size = 3;
                        return v;
                    }
                }
            }
        }
        return v;
    }
    v.reason = VerdictReason::TooManyVertices;
    return v;
}

namespace {

char label(std::size_t i) { return static_cast<char>('A' + i); }

}  // namespace

std::string explain(const Verdict& v) {
    std::ostringstream os;
    switch (v.reason) {
        case VerdictReason::TriangleOrQuadrangle:
            os << "Tiles: every equilateral triangle and every equilateral quadrangle (a rhombus) "
                  "tiles the plane.";
            break;
        case VerdictReason::PentagonPairSum:
            os << "Tiles: the angles at vertices " << label(v.witness[0]) << " and "
               << label(v.witness[1]) << " (indices " << v.witness[0] << ", " << v.witness[1]
               << ") add up to 180 degrees. Two such angles on a common edge give a type-1 "
                  "pentagon, two angles with one vertex between them give a type-2 pentagon.";
            break;
        case VerdictReason::PentagonP7:
            os << "Tiles: no two angles add up to 180 degrees, but the pentagon is similar to P7, "
                  "the unique equilateral convex pentagon of type 7, which tiles.";
            break;
        case VerdictReason::HexagonTriple:
            os << "Tiles: the angles at vertices " << label(v.witness[0]) << ", "
               << label(v.witness[1]) << ", " << label(v.witness[2]) << " (indices "
               << v.witness[0] << ", " << v.witness[1] << ", " << v.witness[2]
               << ") add up to 360 degrees and at least two of them share an edge, so the "
                  "hexagon is of Reinhardt type 1 or 2.";
            break;
        case VerdictReason::TooManyVertices:
            os << "Does not tile: a strictly convex polygon with more than six vertices ("
               << v.vertex_count << " here) never tiles the plane.";
            break;
        case VerdictReason::NoConditionMet:
            if (v.vertex_count == 5) {
                os << "Does not tile: no two angles add up to 180 degrees and the pentagon is not "
                      "similar to P7.";
            } else {
                os << "Does not tile: no triple of angles with two of them sharing an edge adds up "
                      "to 360 degrees.";
            }
            break;
    }
    return os.str();
}

}  // namespace equitile
