#ifndef FORMPRIME_INTS_HPP
#define FORMPRIME_INTS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "formprime/errors.hpp"

namespace formprime {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 narrow(i128 v)
{
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw overflow_error("value exceeds 64-bit range");
    return static_cast<i64>(v);
}

inline i64 mul_checked(i64 a, i64 b)
{
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("multiplication overflow");
    return r;
}

inline i64 add_checked(i64 a, i64 b)
{
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("addition overflow");
    return r;
}

/* Nonnegative remainder, any sign of a. */
inline i64 mod_floor(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 gcd3(i64 a, i64 b, i64 c)
{
    return std::gcd(std::gcd(a, b), c);
}

/* g = gcd(a,b) plus x,y with a*x + b*y = g.  g >= 0 unless a = b = 0. */
struct ExtGcd {
    i64 g, x, y;
};

inline ExtGcd ext_gcd(i64 a, i64 b)
{
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return { old_r, old_s, old_t };
}

/* Floor of sqrt(n); n >= 0. */
inline i64 isqrt(i64 n)
{
    if (n < 0)
        throw domain_error("isqrt of negative value");
    if (n == 0)
        return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(i64 n, i64* root = nullptr)
{
    if (n < 0)
        return false;
    i64 r = isqrt(n);
    if (root)
        *root = r;
    return r * r == n;
}

} // namespace formprime

#endif
