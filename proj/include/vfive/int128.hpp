#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace vfive {

using int128 = __int128;
using uint128 = unsigned __int128;
using bigint = boost::multiprecision::cpp_int;

/// 5^k as uint128; valid for k <= 55.
inline uint128 pow5_u128(int k) {
    uint128 r = 1;
    for (int i = 0; i < k; ++i) r *= 5;
    return r;
}

/// floor(sqrt(n)) for n >= 0.
inline uint128 isqrt_u128(uint128 n) {
    if (n == 0) return 0;
    auto guess = (uint128)std::sqrt((double)n);
    // sqrt on a 128-bit double cast can be off by a few ulps; settle exactly.
    while (guess > 0 && guess * guess > n) --guess;
    while ((guess + 1) * (guess + 1) <= n) ++guess;
    return guess;
}

inline std::int64_t isqrt_i64(std::int64_t n) { return (std::int64_t)isqrt_u128((uint128)n); }

inline bigint to_bigint(uint128 v) {
    bigint hi = (std::uint64_t)(v >> 64);
    bigint lo = (std::uint64_t)v;
    return (hi << 64) | lo;
}

inline bigint to_bigint(int128 v) {
    return v < 0 ? -to_bigint((uint128)(-v)) : to_bigint((uint128)v);
}

inline std::string u128_to_string(uint128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back((char)('0' + (int)(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

inline std::string i128_to_string(int128 v) {
    return v < 0 ? "-" + u128_to_string((uint128)(-v)) : u128_to_string((uint128)v);
}

/// x * 2^1074 as an exact integer (every finite double is a multiple of
/// 2^-1074). Lets comparisons against irrational bounds be settled by
/// squaring into integers.
inline bigint dyadic_scaled(double x) {
    if (x == 0.0) return 0;
    int e;
    const double m = std::frexp(x, &e);              // x = m * 2^e, |m| in [0.5, 1)
    const auto mi = (std::int64_t)std::ldexp(m, 53);  // exact 53-bit integer
    const int sh = e - 53 + 1074;
    bigint big = mi;
    if (sh >= 0) {
        big <<= sh;
    } else {
        big >>= -sh;  // exact: representability guarantees the trailing zeros
    }
    return big;
}

inline constexpr int kDyadicShift = 1074;

}  // namespace vfive
