#pragma once

#include <cstdint>

namespace vdcolor {

__extension__ using Int128 = __int128;

// Exact integer versions of the fractional powers used by the bound checks.

// ceil(x^(2/3)) for x >= 0.
inline long long ceil_pow_2_3(long long x) {
    long long t = 0;
    const Int128 target = static_cast<Int128>(x) * x;
    while (static_cast<Int128>(t) * t * t < target) ++t;
    return t;
}

// ceil(x^(5/6)) for x >= 0.
inline long long ceil_pow_5_6(long long x) {
    long long t = 0;
    Int128 target = 1;
    for (int i = 0; i < 5; ++i) target *= x;
    auto sixth = [](long long v) {
        Int128 p = 1;
        for (int i = 0; i < 6; ++i) p *= v;
        return p;
    };
    while (sixth(t) < target) ++t;
    return t;
}

// value < factor * m^(5/6), exactly.
inline bool below_pow_5_6(long long value, long long factor, long long m) {
    if (value < 0) return true;
    Int128 lhs = 1, rhs = 1;
    for (int i = 0; i < 6; ++i) lhs *= value;
    for (int i = 0; i < 6; ++i) rhs *= factor;
    for (int i = 0; i < 5; ++i) rhs *= m;
    return lhs < rhs;
}

// value < factor * m^(5/3), exactly.
inline bool below_pow_5_3(long long value, long long factor, long long m) {
    if (value < 0) return true;
    Int128 lhs = static_cast<Int128>(value) * value * value;
    Int128 rhs = static_cast<Int128>(factor) * factor * factor;
    for (int i = 0; i < 5; ++i) rhs *= m;
    return lhs < rhs;
}

// ceil(factor * m^(5/6)).
inline long long ceil_scaled_pow_5_6(long long factor, long long m) {
    long long t = 0;
    while (below_pow_5_6(t, factor, m)) ++t;
    return t;
}

// ceil(factor * m^(5/3)).
inline long long ceil_scaled_pow_5_3(long long factor, long long m) {
    long long t = 0;
    while (below_pow_5_3(t, factor, m)) ++t;
    return t;
}

}  // namespace vdcolor
