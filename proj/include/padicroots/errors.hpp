#ifndef PADICROOTS_ERRORS_HPP
#define PADICROOTS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace padicroots {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation requires a nonzero polynomial.
struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("zero polynomial") {}
};

// An enumeration or certification request exceeds the configured budget.
// Budgets are hard errors, never silent truncation.
struct BudgetExceededError : Error {
    using Error::Error;
};

// Invalid argument (bad prime, malformed law/polynomial text, precondition
// violation detectable from the inputs).
struct InvalidArgumentError : Error {
    using Error::Error;
};

// Invariant violation that signals an implementation bug, e.g. the
// root-counting recursion exceeding its discriminant depth cap.
struct InternalError : Error {
    using Error::Error;
};

} // namespace padicroots

#endif
