#pragma once

#include <stdexcept>
#include <string>

namespace tcm {

// Base for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidGrid : Error {
    explicit InvalidGrid(const std::string& what) : Error("InvalidGrid: " + what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error("ShapeMismatch: " + what) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error("GridMismatch: " + what) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& what) : Error("NonFinite: " + what) {}
};

struct EpsilonTooLarge : Error {
    explicit EpsilonTooLarge(const std::string& what) : Error("EpsilonTooLarge: " + what) {}
};

struct UnresolvedCone : Error {
    explicit UnresolvedCone(const std::string& what) : Error("UnresolvedCone: " + what) {}
};

struct NotDivergenceFree : Error {
    explicit NotDivergenceFree(const std::string& what) : Error("NotDivergenceFree: " + what) {}
};

struct InvalidOrder : Error {
    explicit InvalidOrder(const std::string& what) : Error("InvalidOrder: " + what) {}
};

struct TimeMismatch : Error {
    explicit TimeMismatch(const std::string& what) : Error("TimeMismatch: " + what) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& what) : Error("InsufficientSamples: " + what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

struct ValidationError : Error {
    // `field` names the offending config key.
    explicit ValidationError(const std::string& field, const std::string& what)
        : Error("ValidationError: " + field + ": " + what), field(field) {}
    std::string field;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("IoError: " + what) {}
};

}  // namespace tcm
