#pragma once

#include <cstdint>

#include "vfive/circuit.hpp"
#include "vfive/exact_synth.hpp"
#include "vfive/unit_vector.hpp"

namespace vfive {

/// Target precision in trace distance, in (0, 1).
struct Precision {
    double epsilon;

    static Precision of(double eps);
};

struct RotationTarget {
    enum class Axis { X, Y, Z };

    Axis axis;
    double theta;  // wrapped to (-pi, pi]

    static RotationTarget around_z(double theta);
    static RotationTarget around_x(double theta);

    /// PSU(2) value; for Z: (cos(theta/2), 0, 0, sin(theta/2)).
    UnitVector4 value() const;
};

/// Sampling window of the randomized search: integer range of
/// I_w = (5^(L/2) sin(theta/2 - phi), 5^(L/2) sin(theta/2 + phi)),
/// phi = sqrt(2) eps (1 - eps^2/4).
struct SearchWindow {
    int L;
    double phi;
    std::int64_t w_lo, w_hi;

    static SearchWindow build(double theta, double eps, int L);
    std::int64_t size() const { return w_hi >= w_lo ? w_hi - w_lo + 1 : 0; }
};

struct ApproxResult {
    Circuit circuit;
    double achieved_distance = 0.0;
    int level = 0;
    double millis = 0.0;
    std::uint64_t seed = 0;
};

/// Largest integer L with eps < 2 * 5^(-L/4). Requires eps < 2 * 5^-4
/// (throws EpsilonTooLarge above that practical threshold).
int choose_level(Precision eps);

struct RandOptions {
    /// Default completion accepts only even/even coordinate pairs whose
    /// residue is prime; the general path runs the full two-squares test.
    bool general_completion = false;
    int max_escalations = 8;
    int mr_rounds = 25;
};

/// Randomized approximation of Rz(theta) over {V gates, Pauli, S, Sd}:
/// deterministic given the seed, verified trace distance < eps.
ApproxResult approx_rz(double theta, Precision eps, std::uint64_t seed,
                       const RandOptions& opts = {});

/// Fixed-level variant: targets the level's own bound 2 * 5^(-L/4) and never
/// escalates. Used for the V-count/precision sweeps.
ApproxResult approx_rz_at_level(double theta, int level, std::uint64_t seed,
                                const RandOptions& opts = {});

enum class UnitaryBudget {
    /// Each axis approximated to eps/3 at its own choose_level budget.
    SplitEpsilon,
    /// Per-axis level from the full-eps budget, acceptance still eps/3;
    /// keeps the benchmark V counts while verifying total distance < eps.
    PaperBudget,
};

/// General unitary via Z-X-Z Euler angles (X leg by Hadamard conjugation).
ApproxResult approx_unitary(const UnitVector4& g, Precision eps, std::uint64_t seed,
                            const RandOptions& opts = {},
                            UnitaryBudget budget = UnitaryBudget::SplitEpsilon);

/// Long-double inner product distance between (q, level) and a target;
/// resolves distances down to ~1e-9.
double quaternion_distance(const LipschitzQuaternion& q, int level, const UnitVector4& target);

/// Exact dyadic-rational test of trace_distance(q / 5^(L/2), target) < eps.
bool distance_below_exact(const LipschitzQuaternion& q, int level, const UnitVector4& target,
                          double eps);

}  // namespace vfive
