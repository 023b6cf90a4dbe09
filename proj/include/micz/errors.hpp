#pragma once

#include <stdexcept>
#include <string>

namespace micz {

// Base class for all library errors so callers can catch micz failures wholesale.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Inversion hit f^2 - g^2|x|^2 = 0, i.e. the expression is zero in the field.
struct DivisionByZeroExpr : Error {
    explicit DivisionByZeroExpr(const std::string& what) : Error(what) {}
};

// A coefficient denominator vanishes at the requested evaluation point.
struct PoleAtPoint : Error {
    explicit PoleAtPoint(const std::string& what) : Error(what) {}
};

struct DimMismatch : Error {
    explicit DimMismatch(const std::string& what) : Error(what) {}
};

// Operator applied to a Section has a coefficient outside the polynomial-in-x,r,1/r subring.
struct NonPolynomialCoefficient : Error {
    explicit NonPolynomialCoefficient(const std::string& what) : Error(what) {}
};

struct UnsupportedRep : Error {
    explicit UnsupportedRep(const std::string& what) : Error(what) {}
};

// The Casimir sum failed to be a multiple of the identity.
struct NotScalar : Error {
    explicit NotScalar(const std::string& what) : Error(what) {}
};

// The two independent curvature constructions disagree; fatal, never patched over.
struct ConventionMismatch : Error {
    explicit ConventionMismatch(const std::string& what) : Error(what) {}
};

struct IdentityViolation : Error {
    explicit IdentityViolation(const std::string& what) : Error(what) {}
};

struct DecompositionMismatch : Error {
    explicit DecompositionMismatch(const std::string& what) : Error(what) {}
};

struct StructureConstantViolation : Error {
    explicit StructureConstantViolation(const std::string& what) : Error(what) {}
};

struct NonDominant : Error {
    explicit NonDominant(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace micz
