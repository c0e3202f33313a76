#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vfive/int128.hpp"

namespace vfive {

/// Ring R(N, Delta) = { (x,y) : (sqrt(N)-Delta)^2 < x^2+y^2 < N } for N = p^L.
struct RingSpec {
    int p = 5;       // prime, p = 1 mod 4
    int L = 1;
    double delta = 4.0;

    static RingSpec make(int p, int L, double delta);  // validates
    std::int64_t N() const;
    /// 2 Delta p^(L/2) < p^L, the regime where the circumference-count
    /// corollary applies.
    bool hooley_window_ok() const;
};

/// Circular segment A(N, Delta, P+): the ring cut by the half-plane beyond
/// the tangent at polar angle tangent_angle.
struct SegmentSpec {
    RingSpec ring;
    double tangent_angle = 0.0;
    double nx = 1.0, ny = 0.0;  // unit normal (cos t, sin t), stored exactly

    static SegmentSpec make(const RingSpec& ring, double tangent_angle);
    /// Same segment rotated a quarter turn, with the normal components
    /// swapped exactly so lattice counts match bit-for-bit.
    SegmentSpec rotated90() const;
};

/// Spherical cap C_eps(G) on S^3(R).
struct CapSpec {
    double R = 1.0;
    double epsilon = 0.1;
};

struct LatticeCounts {
    std::int64_t grid_points = 0;
    std::int64_t projection_points = 0;
};

/// Integer points in the ring, and how many are projections of four-square
/// decompositions of N (N - x^2 - y^2 a sum of two squares, decided exactly).
LatticeCounts count_ring_projections(const RingSpec& spec);

LatticeCounts count_segment_projections(const SegmentSpec& spec);

/// Polar angles (in [0, 2pi)) of the ring's projection points.
std::vector<double> ring_projection_angles(const RingSpec& spec);

/// Same population over the whole closed disk x^2+y^2 <= N.
std::vector<double> disk_projection_angles(const RingSpec& spec);

struct KsResult {
    double d_statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample two-sided Kolmogorov-Smirnov statistic against uniform on
/// [0, 2pi), with the asymptotic p-value (accurate for n >= 35).
KsResult ks_uniformity(std::vector<double> angles);

/// Closed-form cap volume 2 pi R^3 (acos(e') - sin(2 acos(e'))/2), e' = 1-eps^2.
double cap_volume(const CapSpec& spec);

/// Minimum trace distance from the identity over non-identity level-L exact
/// points (full s4 enumeration; L <= 9).
double min_distance_to_pauli(int L);

/// The same minimum around each of I, X, Y, Z.
std::array<double, 4> pauli_exclusion_distances(int L);

}  // namespace vfive
