#pragma once

#include <stdexcept>
#include <string>

namespace ctsdr {

// Base class for all recoverable toolkit errors. `kind` is a stable
// machine-readable tag used by the CLI when emitting JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct InvalidAxisError : Error {
    explicit InvalidAxisError(const std::string& msg) : Error("invalid-axis", msg) {}
};

struct DegenerateMatrixError : Error {
    explicit DegenerateMatrixError(const std::string& msg) : Error("degenerate-matrix", msg) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& msg) : Error("insufficient-data", msg) {}
};

struct DegenerateMotionError : Error {
    explicit DegenerateMotionError(const std::string& msg) : Error("degenerate-motion", msg) {}
};

struct DegenerateGeometryError : Error {
    explicit DegenerateGeometryError(const std::string& msg) : Error("degenerate-geometry", msg) {}
};

struct NoPathError : Error {
    explicit NoPathError(const std::string& msg) : Error("no-path", msg) {}
};

struct AmbiguousPathError : Error {
    explicit AmbiguousPathError(const std::string& msg) : Error("ambiguous-path", msg) {}
};

struct UndefinedRollError : Error {
    explicit UndefinedRollError(const std::string& msg) : Error("undefined-roll", msg) {}
};

struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& msg) : Error("out-of-range", msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

}  // namespace ctsdr
