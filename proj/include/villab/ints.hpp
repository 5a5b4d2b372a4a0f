#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace villab {

// Exact arithmetic throughout: coefficients, ranks and stage parameters grow
// combinatorially and must never overflow silently.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int ipow(const Int& base, std::int64_t exp) {
    if (exp < 0)
        throw std::invalid_argument("ipow: negative exponent");
    Int result = 1;
    Int b = base;
    std::int64_t e = exp;
    while (e > 0) {
        if (e & 1)
            result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

// Ceiling division for positive divisor.
inline Int ceil_div(const Int& a, const Int& b) {
    if (b <= 0)
        throw std::invalid_argument("ceil_div: divisor must be positive");
    if (a <= 0)
        return a / b;  // exact enough for non-positive numerators we never hit
    return (a + b - 1) / b;
}

inline bool fits_int64(const Int& x) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    return x >= lo && x <= hi;
}

inline std::int64_t to_int64(const Int& x) {
    if (!fits_int64(x))
        throw std::overflow_error("to_int64: value out of range: " + x.str());
    return static_cast<std::int64_t>(x);
}

}  // namespace villab
