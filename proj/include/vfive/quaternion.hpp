#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "vfive/int128.hpp"
#include "vfive/unit_vector.hpp"

namespace vfive {

/// Quaternion a + b i + c j + d k with arbitrary-precision integer components.
struct LipschitzQuaternion {
    bigint a, b, c, d;

    LipschitzQuaternion() : a(0), b(0), c(0), d(0) {}
    LipschitzQuaternion(bigint a_, bigint b_, bigint c_, bigint d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    bool operator==(const LipschitzQuaternion& o) const = default;

    LipschitzQuaternion operator-() const { return {-a, -b, -c, -d}; }
};

LipschitzQuaternion multiply(const LipschitzQuaternion& p, const LipschitzQuaternion& q);
LipschitzQuaternion conjugate(const LipschitzQuaternion& q);
bigint norm(const LipschitzQuaternion& q);

/// Right quotient: q' with q = q' * d, when every component of q * conj(d)
/// is divisible by norm(d). Empty optional signals NotDivisible.
std::optional<LipschitzQuaternion> try_right_divide(const LipschitzQuaternion& q,
                                                    const LipschitzQuaternion& d);

/// The 8 Lipschitz units followed by the 6 norm-5 generators, in this fixed
/// order: 1, -1, i, -i, j, -j, k, -k, 1+2i, 1-2i, 1+2j, 1-2j, 1+2k, 1-2k.
const std::array<LipschitzQuaternion, 14>& generator_set();

/// The norm-5 slice of generator_set(), probe order 1+2i, 1-2i, 1+2j, 1-2j,
/// 1+2k, 1-2k.
const std::array<LipschitzQuaternion, 6>& norm5_generators();

bool is_unit(const LipschitzQuaternion& q);

/// Text form "a,b,c,d", base-10 arbitrary precision with optional signs.
std::string to_string(const LipschitzQuaternion& q);
std::optional<LipschitzQuaternion> parse_quaternion(std::string_view text);

/// Normalized PSU(2) value (aI + biX + ciY + diZ) / sqrt(norm).
UnitVector4 to_unit_vector(const LipschitzQuaternion& q);

}  // namespace vfive
