// SPDX-License-Identifier: MIT
#include "acalc/bipoly.hpp"

#include <sstream>

namespace acalc {

BiPoly BiPoly::term(const IntQPoly& c, unsigned dx, unsigned dy) {
    BiPoly b;
    b.add_term({dx, dy}, c);
    return b;
}

void BiPoly::add_term(const Exp& e, const IntQPoly& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
}

BiPoly operator*(const IntQPoly& c, const BiPoly& b) {
    BiPoly r;
    for (const auto& [e, cb] : b.t_) r.add_term(e, c * cb);
    return r;
}

std::string BiPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*X^" << e.first << "*Y^" << e.second;
    }
    return os.str();
}

}  // namespace acalc
