#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cerrno>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <type_traits>

namespace teich {

using Rational = boost::multiprecision::cpp_rational;

/// Scalars accepted by the combinatorial layer: exact rationals or doubles.
template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

/// Result type of mixing two scalars; exact only when both are exact.
template <Scalar A, Scalar B>
using promote_t = std::conditional_t<std::same_as<A, Rational> && std::same_as<B, Rational>, Rational, double>;

inline double to_double(double v) noexcept { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

template <Scalar To, Scalar From>
To scalar_cast(const From& v) {
    if constexpr (std::same_as<To, From>)
        return v;
    else if constexpr (std::same_as<To, double>)
        return to_double(v);
    else
        return Rational(v); // exact binary expansion of the double
}

/// Parses "p/q" or "p". Decimal points are rejected; use parse_real.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty() || s.find_first_not_of("+-0123456789/ ") != std::string::npos)
        throw InvalidInput("not an exact rational: \"" + s + "\"");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw InvalidInput("not an exact rational: \"" + s + "\"");
    }
}

inline double parse_real(std::string_view text) {
    std::string s(text);
    if (s.find('/') != std::string::npos)
        return to_double(parse_rational(s));
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw InvalidInput("not a real number: \"" + s + "\"");
    return v;
}

/// Fixed-precision decimal used in every report (15 significant digits).
inline std::string format_decimal(double v, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string format_scalar(const Rational& v) { return v.str(); }
inline std::string format_scalar(double v) { return format_decimal(v); }

} // namespace teich
