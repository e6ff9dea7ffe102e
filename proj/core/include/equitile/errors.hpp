#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equitile {

enum class ErrorKind {
    InvalidInput,
    NonSimplePolygon,
    DegenerateVertex,
    NotCounterClockwise,
    InvalidAngle,
    AngleSumMismatch,
    ClosureFailure,
    WrongArity,
    UnknownType,
    ConvergenceFailure,
    NonConvexSolution,
    EmptyFamily,
    InvalidPolygon,
    MalformedPatch,
    EmptyPatch,
    ConstructionFailure,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is the
/// machine-readable part; what() carries the detail.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a unit-edge walk fails to return to its start.
class ClosureError : public Error {
public:
    ClosureError(double dx, double dy, const std::string& message)
        : Error(ErrorKind::ClosureFailure, message), dx_(dx), dy_(dy) {}

    double residual_x() const noexcept { return dx_; }
    double residual_y() const noexcept { return dy_; }

private:
    double dx_;
    double dy_;
};

}  // namespace equitile
