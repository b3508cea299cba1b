// SPDX-License-Identifier: MIT
#include "acalc/parse.hpp"

#include <cctype>

#include "acalc/errors.hpp"

namespace acalc {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    IntQPoly parse() {
        skip_ws();
        if (at_end()) fail("empty polynomial");
        IntQPoly out;
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++i_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            out += term() * IntQPoly(static_cast<long>(sign));
            first = false;
            skip_ws();
        }
        return out;
    }

private:
    IntQPoly term() {
        mpz_class c = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = mpz_class(digits());
            have_coeff = true;
            skip_ws();
            if (peek() == '*') {
                ++i_;
                skip_ws();
                if (peek() != 'q') fail("expected 'q' after '*'");
            }
        }
        if (peek() != 'q') {
            if (!have_coeff) fail("expected a coefficient or 'q'");
            return IntQPoly(c);
        }
        ++i_;
        skip_ws();
        std::size_t e = 1;
        if (peek() == '^') {
            ++i_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
            const std::string d = digits();
            if (d.size() > 6) fail("exponent too large");
            e = std::stoul(d);
        }
        return IntQPoly::monomial(c, e);
    }

    std::string digits() {
        const std::size_t b = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        return s_.substr(b, i_ - b);
    }

    char peek() const { return at_end() ? '\0' : s_[i_]; }
    bool at_end() const { return i_ >= s_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial literal '" + s_ + "': " + what + " at offset " + std::to_string(i_));
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

}  // namespace

IntQPoly parse_qpoly(const std::string& text) { return Parser(text).parse(); }

}  // namespace acalc
