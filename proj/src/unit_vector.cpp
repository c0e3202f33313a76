#include "vfive/unit_vector.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vfive {

namespace {

void canonicalize(double& a, double& b, double& g, double& d) {
    double lead = a;
    if (lead == 0.0) lead = b;
    if (lead == 0.0) lead = g;
    if (lead == 0.0) lead = d;
    if (lead < 0.0) {
        a = -a;
        b = -b;
        g = -g;
        d = -d;
    }
    // normalize -0.0 so canonical forms compare equal
    if (a == 0.0) a = 0.0;
    if (b == 0.0) b = 0.0;
    if (g == 0.0) g = 0.0;
    if (d == 0.0) d = 0.0;
}

}  // namespace

UnitVector4 UnitVector4::from_components(double alpha, double beta, double gamma, double delta) {
    const double n2 = alpha * alpha + beta * beta + gamma * gamma + delta * delta;
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw std::invalid_argument("UnitVector4: squared norm " + std::to_string(n2) +
                                    " deviates from 1 beyond 1e-12");
    }
    canonicalize(alpha, beta, gamma, delta);
    return UnitVector4(alpha, beta, gamma, delta);
}

UnitVector4 UnitVector4::normalized(double alpha, double beta, double gamma, double delta) {
    const double n = std::sqrt(alpha * alpha + beta * beta + gamma * gamma + delta * delta);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("UnitVector4: cannot normalize zero or non-finite vector");
    }
    alpha /= n;
    beta /= n;
    gamma /= n;
    delta /= n;
    canonicalize(alpha, beta, gamma, delta);
    return UnitVector4(alpha, beta, gamma, delta);
}

std::string UnitVector4::to_json() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g,%.17g,%.17g]", alpha_, beta_, gamma_, delta_);
    return buf;
}

double trace_distance(const UnitVector4& u, const UnitVector4& v) {
    const double dot = u.alpha() * v.alpha() + u.beta() * v.beta() + u.gamma() * v.gamma() +
                       u.delta() * v.delta();
    const double one_minus = 1.0 - std::abs(dot);
    return std::sqrt(one_minus > 0.0 ? one_minus : 0.0);
}

}  // namespace vfive
