#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace wab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact rationals render as "p" or "p/q", q > 0.
inline std::string rational_text(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("malformed rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(Int(std::string(s)));
        }
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        if (den == 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

}  // namespace wab
