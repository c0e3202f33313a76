#pragma once

#include "vfive/prng.hpp"
#include "vfive/unit_vector.hpp"

namespace vfive {

/// Haar-random PSU(2) element: normalized 4-dimensional Gaussian, canonicalized.
inline UnitVector4 random_unitary(Rng& rng) {
    while (true) {
        const double a = rng.next_gaussian();
        const double b = rng.next_gaussian();
        const double c = rng.next_gaussian();
        const double d = rng.next_gaussian();
        const double n2 = a * a + b * b + c * c + d * d;
        if (n2 > 1e-12) return UnitVector4::normalized(a, b, c, d);
    }
}

}  // namespace vfive
