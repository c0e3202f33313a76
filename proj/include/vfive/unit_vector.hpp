#pragma once

#include <string>

#include "vfive/gates.hpp"

namespace vfive {

/// Canonical PSU(2) point (alpha, beta, gamma, delta) of unit norm:
/// the gate (alpha I + i beta X + i gamma Y + i delta Z). The stored
/// representative has alpha > 0, or alpha == 0 and the first nonzero of
/// (beta, gamma, delta) positive, so equality up to global phase is plain
/// field comparison.
class UnitVector4 {
public:
    /// Validates unit norm to 1e-12, then canonicalizes the sign.
    static UnitVector4 from_components(double alpha, double beta, double gamma, double delta);

    /// Normalizes an arbitrary nonzero 4-vector, then canonicalizes.
    static UnitVector4 normalized(double alpha, double beta, double gamma, double delta);

    static UnitVector4 from_quat(const QuatD& q) { return normalized(q.a, q.b, q.c, q.d); }

    static UnitVector4 identity() { return from_components(1, 0, 0, 0); }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }

    QuatD quat() const { return {alpha_, beta_, gamma_, delta_}; }

    bool operator==(const UnitVector4& o) const = default;

    /// JSON array [alpha,beta,gamma,delta] with 17 significant digits.
    std::string to_json() const;

private:
    UnitVector4(double a, double b, double g, double d)
        : alpha_(a), beta_(b), gamma_(g), delta_(d) {}

    double alpha_, beta_, gamma_, delta_;
};

/// dist(U, V) = sqrt(1 - |tr(U V^dagger)| / 2) = sqrt(1 - |<u, v>|).
double trace_distance(const UnitVector4& u, const UnitVector4& v);

}  // namespace vfive
