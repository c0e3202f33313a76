#include "vfive/exact_synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "vfive/errors.hpp"

namespace vfive {

std::optional<int> is_exactly_representable(const LipschitzQuaternion& q) {
    bigint n = norm(q);
    if (n == 0) return std::nullopt;
    int level = 0;
    while (n % 5 == 0) {
        n /= 5;
        ++level;
    }
    if (n != 1) return std::nullopt;
    return level;
}

std::optional<ExactUnitary> ExactUnitary::from_quaternion(LipschitzQuaternion q) {
    const auto level = is_exactly_representable(q);
    if (!level) return std::nullopt;
    return ExactUnitary(std::move(q), *level);
}

ExactUnitary ExactUnitary::from_quaternion_or_throw(LipschitzQuaternion q) {
    auto u = from_quaternion(std::move(q));
    if (!u) {
        throw NotRepresentableError("quaternion norm is not a power of 5");
    }
    return *u;
}

ExactUnitary ExactUnitary::reduced() const {
    LipschitzQuaternion q = q_;
    int level = level_;
    while (q.a % 5 == 0 && q.b % 5 == 0 && q.c % 5 == 0 && q.d % 5 == 0) {
        q = {q.a / 5, q.b / 5, q.c / 5, q.d / 5};
        level -= 2;
    }
    return ExactUnitary(std::move(q), level);
}

GateToken gate_of_generator(const LipschitzQuaternion& g) {
    static const std::pair<LipschitzQuaternion, GateToken> kTable[] = {
        {{1, 2, 0, 0}, GateToken::V1},  {{1, -2, 0, 0}, GateToken::V1d},
        {{1, 0, 2, 0}, GateToken::V2},  {{1, 0, -2, 0}, GateToken::V2d},
        {{1, 0, 0, 2}, GateToken::V3},  {{1, 0, 0, -2}, GateToken::V3d},
        {{0, 1, 0, 0}, GateToken::X},   {{0, -1, 0, 0}, GateToken::X},
        {{0, 0, 1, 0}, GateToken::Y},   {{0, 0, -1, 0}, GateToken::Y},
        {{0, 0, 0, 1}, GateToken::Z},   {{0, 0, 0, -1}, GateToken::Z},
        {{1, 0, 0, 0}, GateToken::I},   {{-1, 0, 0, 0}, GateToken::I},
    };
    for (const auto& [quat, tok] : kTable) {
        if (quat == g) return tok;
    }
    throw NotRepresentableError("quaternion " + to_string(g) + " is not a generator");
}

Circuit exact_synthesize(const ExactUnitary& u) {
    std::vector<GateToken> reversed;  // gathered right-to-left, reversed at the end
    LipschitzQuaternion q = u.quaternion();
    while (norm(q) > 1) {
        bool advanced = false;
        for (const auto& gen : norm5_generators()) {
            if (auto quotient = try_right_divide(q, gen)) {
                reversed.push_back(gate_of_generator(gen));
                q = std::move(*quotient);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            throw std::logic_error("exact_synthesize: no generator divides " + to_string(q));
        }
    }
    // trailing unit: +-1 drops (global sign), +-i/j/k become one Pauli token
    const GateToken unit_tok = gate_of_generator(q);
    if (unit_tok != GateToken::I) reversed.push_back(unit_tok);
    std::reverse(reversed.begin(), reversed.end());
    return Circuit(std::move(reversed));
}

LipschitzQuaternion circuit_quaternion(const Circuit& c) {
    static const LipschitzQuaternion kOne{1, 0, 0, 0};
    LipschitzQuaternion acc = kOne;
    for (GateToken t : c.tokens()) {
        LipschitzQuaternion g;
        switch (t) {
            case GateToken::V1: g = {1, 2, 0, 0}; break;
            case GateToken::V1d: g = {1, -2, 0, 0}; break;
            case GateToken::V2: g = {1, 0, 2, 0}; break;
            case GateToken::V2d: g = {1, 0, -2, 0}; break;
            case GateToken::V3: g = {1, 0, 0, 2}; break;
            case GateToken::V3d: g = {1, 0, 0, -2}; break;
            case GateToken::X: g = {0, 1, 0, 0}; break;
            case GateToken::Y: g = {0, 0, 1, 0}; break;
            case GateToken::Z: g = {0, 0, 0, 1}; break;
            case GateToken::I: g = kOne; break;
            default:
                throw std::invalid_argument(
                    "circuit_quaternion: token without a Lipschitz value: " +
                    std::string(token_name(t)));
        }
        acc = multiply(acc, g);
    }
    return acc;
}

}  // namespace vfive
