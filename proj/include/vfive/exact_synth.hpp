#pragma once

#include <optional>

#include "vfive/circuit.hpp"
#include "vfive/quaternion.hpp"

namespace vfive {

/// Quaternion of norm exactly 5^L; as a gate, (aI + biX + ciY + diZ) 5^(-L/2).
/// Two values are PSU(2)-equal iff q = +-q' after level alignment.
class ExactUnitary {
public:
    /// Empty when norm(q) is not a power of 5.
    static std::optional<ExactUnitary> from_quaternion(LipschitzQuaternion q);

    /// Like from_quaternion but throws NotRepresentableError instead.
    static ExactUnitary from_quaternion_or_throw(LipschitzQuaternion q);

    const LipschitzQuaternion& quaternion() const { return q_; }
    int level() const { return level_; }

    /// Divides out any 5^m content (each factor of 5 in all components drops
    /// the level by 2). The PSU(2) value is unchanged; circuits get shorter.
    ExactUnitary reduced() const;

    UnitVector4 value() const { return to_unit_vector(q_); }

private:
    ExactUnitary(LipschitzQuaternion q, int level) : q_(std::move(q)), level_(level) {}

    LipschitzQuaternion q_;
    int level_;
};

/// L with norm(q) = 5^L, if any.
std::optional<int> is_exactly_representable(const LipschitzQuaternion& q);

/// Fixed mapping of the 14 generators onto tokens: 1+-2i -> V1/V1d,
/// 1+-2j -> V2/V2d, 1+-2k -> V3/V3d, units +-i,+-j,+-k -> X,Y,Z (sign
/// discarded), +-1 -> I. Throws NotRepresentableError for non-generators.
GateToken gate_of_generator(const LipschitzQuaternion& g);

/// Trial-division synthesis: a circuit over {V gates, X, Y, Z} whose
/// quaternion product equals the input exactly up to sign, with
/// v_count <= level. Probe order per norm5_generators(), first hit wins.
Circuit exact_synthesize(const ExactUnitary& u);

/// Exact left-to-right quaternion product of a circuit over the V/Pauli/I
/// alphabet (no H or S tokens; those have no Lipschitz representative).
LipschitzQuaternion circuit_quaternion(const Circuit& c);

}  // namespace vfive
