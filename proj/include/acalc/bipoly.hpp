// SPDX-License-Identifier: MIT
// Polynomials in two commuting indeterminates X, Y with IntQPoly coefficients.
#pragma once

#include <map>
#include <string>
#include <utility>

#include "acalc/poly.hpp"

namespace acalc {

class BiPoly {
public:
    using Exp = std::pair<unsigned, unsigned>;  // (deg X, deg Y)

    BiPoly() = default;
    static BiPoly term(const IntQPoly& c, unsigned dx, unsigned dy);
    static BiPoly X() { return term(IntQPoly(1L), 1, 0); }
    static BiPoly Y() { return term(IntQPoly(1L), 0, 1); }

    const std::map<Exp, IntQPoly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const IntQPoly& c, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }

    std::string to_string() const;

private:
    void add_term(const Exp& e, const IntQPoly& c);
    std::map<Exp, IntQPoly> t_;  // no zero coefficients stored
};

}  // namespace acalc
