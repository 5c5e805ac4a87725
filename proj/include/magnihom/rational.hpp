#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace magnihom {

/// Arbitrary-precision integer and rational scalars.
///
/// All lengths, distances and matrix entries in this library are exact.
/// cpp_rational keeps values in lowest terms with a positive denominator,
/// which is exactly the canonical form the rest of the code relies on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or an integer string (optionally signed) into a Rational.
/// Anything else -- decimal points, exponents, empty fields -- is rejected,
/// so a value like "1.5" never sneaks in as an approximation.
inline Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not an exact rational: \"" + text + "\"");
    };
    if (text.empty()) return fail();
    auto is_integer = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto to_int = [](const std::string& s) {  // cpp_int does not accept "+7"
        return Int(s[0] == '+' ? s.substr(1) : s);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer(text)) return fail();
        return Rational(to_int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer(num) || !is_integer(den)) return fail();
    Int d = to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
    return Rational(to_int(num), d);
}

/// Formats a Rational as "p/q", or just "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace magnihom
