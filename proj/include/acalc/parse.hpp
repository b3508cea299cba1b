// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "acalc/poly.hpp"

namespace acalc {

// Integer combination of powers of q, e.g. "3q^2 - q + 1", "2*q^3", "-7".
// Throws ParseError on malformed input.
IntQPoly parse_qpoly(const std::string& text);

}  // namespace acalc
