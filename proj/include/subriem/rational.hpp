#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace subriem {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(long long p, long long q = 1) { return Rational(p) / Rational(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p/q", integers, and decimals with optional exponent, exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty number");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    Integer mantissa = 0;
    int scale = 0;
    bool digits = false, point = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mantissa = mantissa * 10 + (ch - '0');
            digits = true;
            if (point) --scale;
        } else if (ch == '.' && !point) {
            point = true;
        } else {
            break;
        }
    }
    if (!digits) throw ParseError("malformed number '" + s + "'");
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed number '" + s + "'");
        std::string exp = s.substr(i + 1);
        if (exp.empty()) throw ParseError("malformed exponent in '" + s + "'");
        std::size_t used = 0;
        int e = 0;
        try {
            e = std::stoi(exp, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + s + "'");
        }
        if (used != exp.size()) throw ParseError("malformed exponent in '" + s + "'");
        scale += e;
    }
    Rational value(mantissa);
    Integer ten = 10;
    if (scale > 0) value *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(scale)));
    if (scale < 0) value /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-scale)));
    return negative ? -value : value;
}

/// Square root when q is the square of a rational, otherwise empty.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Integer n = numerator(q), d = denominator(q);
    Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn) / Rational(rd);
}

}  // namespace subriem
