#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "vbp/errors.hpp"

namespace vbp {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline bool allDigits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

// Exact parsing of "p/q", decimal strings ("0.25", "-1.5", ".5") and plain
// integers. Floating point never enters: "0.1" becomes exactly 1/10.
inline Rational parseRational(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw ParseError("empty number");
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) throw ParseError("sign without digits: '" + text + "'");

    Rational value;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!detail::allDigits(num) || !detail::allDigits(den))
            throw ParseError("bad fraction: '" + text + "'");
        Integer d(den);
        if (d == 0) throw ParseError("zero denominator: '" + text + "'");
        value = Rational(Integer(num), d);
    } else {
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
            if (whole.empty() && frac.empty())
                throw ParseError("bad decimal: '" + text + "'");
            if (!whole.empty() && !detail::allDigits(whole))
                throw ParseError("bad decimal: '" + text + "'");
            if (!frac.empty() && !detail::allDigits(frac))
                throw ParseError("bad decimal: '" + text + "'");
            Integer w = whole.empty() ? Integer(0) : Integer(whole);
            Integer den = 1;
            Integer num = 0;
            if (!frac.empty()) {
                num = Integer(frac);
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            }
            value = Rational(w * den + num, den);
        } else {
            if (!detail::allDigits(s)) throw ParseError("bad integer: '" + text + "'");
            value = Rational(Integer(s));
        }
    }
    value.canonicalize();
    if (neg) value = -value;
    return value;
}

// Canonical rendering: integers as "n", everything else as "p/q".
inline std::string formatRational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace vbp
