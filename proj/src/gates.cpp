#include "vfive/gates.hpp"

#include <array>
#include <cmath>

namespace vfive {

namespace {

constexpr std::array<std::string_view, kNumGateTokens> kNames = {
    "V1", "V1d", "V2", "V2d", "V3", "V3d", "X", "Y", "Z", "H", "S", "Sd", "I"};

const double kInvSqrt5 = 1.0 / std::sqrt(5.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::string_view token_name(GateToken t) { return kNames[(std::size_t)t]; }

std::optional<GateToken> token_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return (GateToken)i;
    }
    return std::nullopt;
}

QuatD token_value(GateToken t) {
    switch (t) {
        case GateToken::V1: return {kInvSqrt5, 2 * kInvSqrt5, 0, 0};
        case GateToken::V1d: return {kInvSqrt5, -2 * kInvSqrt5, 0, 0};
        case GateToken::V2: return {kInvSqrt5, 0, 2 * kInvSqrt5, 0};
        case GateToken::V2d: return {kInvSqrt5, 0, -2 * kInvSqrt5, 0};
        case GateToken::V3: return {kInvSqrt5, 0, 0, 2 * kInvSqrt5};
        case GateToken::V3d: return {kInvSqrt5, 0, 0, -2 * kInvSqrt5};
        case GateToken::X: return {0, 1, 0, 0};
        case GateToken::Y: return {0, 0, 1, 0};
        case GateToken::Z: return {0, 0, 0, 1};
        case GateToken::H: return {0, kInvSqrt2, 0, kInvSqrt2};
        case GateToken::S: return {kInvSqrt2, 0, 0, kInvSqrt2};
        case GateToken::Sd: return {kInvSqrt2, 0, 0, -kInvSqrt2};
        case GateToken::I: return {1, 0, 0, 0};
    }
    return {1, 0, 0, 0};
}

}  // namespace vfive
