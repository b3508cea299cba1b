// SPDX-License-Identifier: MIT
// Exception types shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace acalc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Euclidean division left a nonzero remainder where exact divisibility was expected.
struct NonzeroRemainder : Error {
    using Error::Error;
};

struct NotAUnit : Error {
    using Error::Error;
};

struct PrecisionMismatch : Error {
    using Error::Error;
};

struct PrecisionTooLow : Error {
    using Error::Error;
};

struct OrderCapTooHigh : Error {
    using Error::Error;
};

struct WrongPrime : Error {
    using Error::Error;
};

struct NotPIntegral : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotWeaklyNilpotent : Error {
    using Error::Error;
};

struct UnknownSuite : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace acalc
