// errors.hpp: Exception types shared by all modules.
//
// Argument validation uses std::invalid_argument directly. The types below
// mark numerical conditions that callers (notably the CLI) map to distinct
// exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

// A (k,q) Stevens operator without a built-in definition.
struct UnsupportedOperator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Base for failures where the formulas are not evaluable at the requested point.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A denominator vanished (zero broadening exactly on a spin resonance).
struct SingularEvaluation : NumericalError {
    using NumericalError::NumericalError;
};

// A Schrieffer-Wolff denominator E ± Ω fell inside the resonance tolerance.
struct ResonantDenominator : NumericalError {
    ResonantDenominator(const std::string& what, int first, int second)
        : NumericalError(what), pair_first(first), pair_second(second) {}
    int pair_first;
    int pair_second;
};

// Dressed states cannot be labeled by bare states.
struct NonDispersive : NumericalError {
    using NumericalError::NumericalError;
};

struct NoWorkingPoint : NumericalError {
    using NumericalError::NumericalError;
};

struct UnclassifiableState : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qudit
