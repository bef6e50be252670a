#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace taut {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Representative of a in [0, |m|). m must be nonzero.
inline Integer floor_mod(const Integer& a, const Integer& m)
{
    const Integer n = abs_value(m);
    Integer r = a % n;
    if (r < 0) r += n;
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer x = abs_value(a), y = abs_value(b);
    while (y != 0) {
        Integer t = x % y;
        x = std::move(y);
        y = std::move(t);
    }
    return x;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) return 0;
    return abs_value(a / gcd(a, b) * b);
}

inline Integer power(Integer base, unsigned exponent)
{
    Integer result = 1;
    while (exponent) {
        if (exponent & 1u) result *= base;
        base *= base;
        exponent >>= 1u;
    }
    return result;
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline bool is_zero_vector(const Vector& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace taut
