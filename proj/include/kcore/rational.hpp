#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <string>

#include "errors.hpp"

namespace kcore {

// Every quantity in this library is an exact rational. Vertex certification
// rests on rank computations, and those are only meaningful without rounding.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline bool is_integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// cpp_int's string constructor treats a leading 0 as octal; force base 10.
inline BigInt decimal_bigint(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    const bool negative = !s.empty() && s[0] == '-';
    while (i + 1 < s.size() && s[i] == '0') ++i;
    BigInt magnitude(s.substr(i));
    return negative ? -magnitude : magnitude;
}

} // namespace detail

// Parses "3", "-7", "3/10", "0.25", "2.5e-1" into an exact rational.
// Decimal strings are scaled by powers of ten, never rounded.
inline Rational parse_rational(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t");
    if (first == std::string::npos)
        throw input_error("empty rational literal");
    const std::size_t last = text.find_last_not_of(" \t");
    const std::string s = text.substr(first, last - first + 1);

    if (const std::size_t slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den))
            throw input_error("bad rational literal '" + text + "'");
        BigInt d = detail::decimal_bigint(den);
        if (d == 0)
            throw input_error("zero denominator in '" + text + "'");
        return Rational(detail::decimal_bigint(num), d);
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
        negative = (s[i] == '-');
        ++i;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        seen_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            digits += s[i];
            ++frac_digits;
            seen_digit = true;
        }
    }
    long long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::string exp_text = s.substr(i + 1);
        if (!detail::is_integer_literal(exp_text))
            throw input_error("bad exponent in '" + text + "'");
        exponent = std::stoll(exp_text);
        if (exponent > 1000 || exponent < -1000)
            throw input_error("exponent out of range in '" + text + "'");
        i = s.size();
    }
    if (!seen_digit || i != s.size())
        throw input_error("bad rational literal '" + text + "'");

    BigInt numerator = detail::decimal_bigint(digits.empty() ? "0" : digits);
    if (negative) numerator = -numerator;
    const long long shift = exponent - frac_digits;
    if (shift >= 0)
        return Rational(numerator * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift)), 1);
    return Rational(numerator, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift)));
}

// Canonical reduced form: "p/q", or just "p" for integers.
inline std::string format_rational(const Rational& value) {
    return value.str();
}

inline double approx(const Rational& value) {
    return value.convert_to<double>();
}

// C(n, k) with the usual convention that out-of-range k gives 0.
inline Rational binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    BigInt result = 1;
    for (long long j = 1; j <= k; ++j) {
        result *= n - k + j;
        result /= j;
    }
    return Rational(result);
}

} // namespace kcore
