#pragma once

#include <stdexcept>
#include <string>

namespace perfval {

/// Coarse classification used by the CLI to pick an exit code.
enum class ErrorCategory {
    input,      // malformed input, violated precondition
    precision,  // the answer would need data at or beyond the precision cap
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, std::string what) : std::runtime_error(std::move(what)), cat_(cat) {}
    ErrorCategory category() const { return cat_; }

private:
    ErrorCategory cat_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorCategory::input, "parse error: " + w) {}
};

struct DescriptorMismatch : Error {
    explicit DescriptorMismatch(const std::string& w = "operands live in different rings")
        : Error(ErrorCategory::input, "descriptor mismatch: " + w) {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& w = "element has nonzero valuation")
        : Error(ErrorCategory::input, "not a unit: " + w) {}
};

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& w = "valuation of dividend below divisor")
        : Error(ErrorCategory::input, "not divisible: " + w) {}
};

struct NotTorsion : Error {
    explicit NotTorsion(const std::string& w = "no maximal minor with finite valuation")
        : Error(ErrorCategory::input, "not a torsion presentation: " + w) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& w)
        : Error(ErrorCategory::precision, "precision exhausted: " + w) {}
};

struct ModeUnsupported : Error {
    explicit ModeUnsupported(const std::string& w)
        : Error(ErrorCategory::input, "mode unsupported: " + w) {}
};

struct NoRootBelowPrecision : Error {
    explicit NoRootBelowPrecision(const std::string& w)
        : Error(ErrorCategory::precision, "no root below precision: " + w) {}
};

struct CompatibilityViolation : Error {
    explicit CompatibilityViolation(std::size_t index)
        : Error(ErrorCategory::input,
                "tilt compatibility violation at component " + std::to_string(index)),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

struct WitnessInvalid : Error {
    explicit WitnessInvalid(const std::string& w)
        : Error(ErrorCategory::input, "witness invalid: " + w) {}
};

struct NotAlmostSurjective : Error {
    explicit NotAlmostSurjective(const std::string& w = "an elementary divisor sits at or beyond precision")
        : Error(ErrorCategory::input, "not almost surjective: " + w) {}
};

struct LiftObstructed : Error {
    explicit LiftObstructed(const std::string& w)
        : Error(ErrorCategory::precision, "lift obstructed: " + w) {}
};

struct RootSearchExceeded : Error {
    explicit RootSearchExceeded(const std::string& w)
        : Error(ErrorCategory::precision, "root search exceeded: " + w) {}
};

struct NotIntegralBasis : Error {
    explicit NotIntegralBasis(const std::string& w)
        : Error(ErrorCategory::input, "no integral monomial basis: " + w) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& w) : Error(ErrorCategory::input, w) {}
};

}  // namespace perfval
