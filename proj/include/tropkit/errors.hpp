#pragma once

#include <stdexcept>
#include <string>

namespace tropkit {

// Base class for all domain errors raised by the library. Usage errors
// (bad CLI input, malformed documents) throw ParseError; everything else
// signals a violated precondition of some operation.
struct TropkitError : std::runtime_error {
    explicit TropkitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyPolyhedron : TropkitError {
    EmptyPolyhedron() : TropkitError("operation requires a nonempty polyhedron") {}
};

struct DimensionGuardExceeded : TropkitError {
    explicit DimensionGuardExceeded(int n, int guard)
        : TropkitError("ambient dimension " + std::to_string(n) +
                       " exceeds guard " + std::to_string(guard)) {}
};

struct ConstraintLimitExceeded : TropkitError {
    explicit ConstraintLimitExceeded(std::size_t m)
        : TropkitError("constraint count " + std::to_string(m) + " exceeds guard 64") {}
};

struct ZeroVector : TropkitError {
    ZeroVector() : TropkitError("zero vector has no primitive representative") {}
};

struct NotACodimOneFace : TropkitError {
    explicit NotACodimOneFace(const std::string& msg = "tau is not a codimension-1 face of sigma")
        : TropkitError(msg) {}
};

struct IntersectionAxiomViolated : TropkitError {
    int cell_a;
    int cell_b;
    IntersectionAxiomViolated(int a, int b)
        : TropkitError("cells " + std::to_string(a) + " and " + std::to_string(b) +
                       " intersect in a set that is not a common face"),
          cell_a(a), cell_b(b) {}
};

struct PointNotOnSupport : TropkitError {
    PointNotOnSupport() : TropkitError("point does not lie on the support of the cycle") {}
};

struct MissingPiece : TropkitError {
    int cell;
    explicit MissingPiece(int c)
        : TropkitError("no piece assigned to maximal cell " + std::to_string(c)), cell(c) {}
};

struct NotBalanced : TropkitError {
    NotBalanced() : TropkitError("cycle is not balanced") {}
};

struct NotPure : TropkitError {
    NotPure() : TropkitError("cycle is not pure-dimensional") {}
};

struct ContinuityViolated : TropkitError {
    ContinuityViolated() : TropkitError("piecewise function is not continuous") {}
};

struct SupportNotContained : TropkitError {
    SupportNotContained() : TropkitError("support of the target cycle is not contained in the source") {}
};

struct NotGeneric : TropkitError {
    NotGeneric() : TropkitError("hyperplane is not generic for the cycle") {}
};

struct Exhausted : TropkitError {
    explicit Exhausted(int iterations)
        : TropkitError("no generic hyperplane found after " + std::to_string(iterations) +
                       " samples") {}
};

struct NonIntegralWeight : TropkitError {
    NonIntegralWeight()
        : TropkitError("corner locus has a weight function that is not a nonzero integer constant") {}
};

struct ParseError : TropkitError {
    explicit ParseError(const std::string& msg) : TropkitError(msg) {}
};

} // namespace tropkit
