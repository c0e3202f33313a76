#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace vfive {

/// Gate alphabet: the six V gates (V_c contribution 1), Paulis, H, S and its
/// inverse, and the identity. "V1d" is ASCII for V1^-1.
enum class GateToken : std::uint8_t { V1, V1d, V2, V2d, V3, V3d, X, Y, Z, H, S, Sd, I };

inline constexpr int kNumGateTokens = 13;

constexpr bool is_v_gate(GateToken t) {
    return t == GateToken::V1 || t == GateToken::V1d || t == GateToken::V2 ||
           t == GateToken::V2d || t == GateToken::V3 || t == GateToken::V3d;
}

std::string_view token_name(GateToken t);
std::optional<GateToken> token_from_name(std::string_view name);

/// Quaternion in the (I, iX, iY, iZ) coefficient basis. Products follow the
/// Hamilton rule, which mirrors the matrix product modulo global sign.
struct QuatD {
    double a, b, c, d;
};

constexpr QuatD qmul(const QuatD& p, const QuatD& q) {
    return QuatD{
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    };
}

/// Unit-quaternion value of a token. S denotes the +pi/2 Z rotation in the
/// (alpha I + i delta Z) sign convention; all tokens are internally consistent
/// with it and the distinction is invisible in PSU(2).
QuatD token_value(GateToken t);

}  // namespace vfive
