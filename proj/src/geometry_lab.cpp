#include "vfive/geometry_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vfive/errors.hpp"
#include "vfive/kernels.hpp"
#include "vfive/numtheory.hpp"

namespace vfive {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kEnumerationBudget = 1e8;  // Delta * p^(L/2) cap

std::int64_t checked_pow_i64(int p, int L) {
    uint128 n = 1;
    for (int i = 0; i < L; ++i) {
        n *= (unsigned)p;
        if (n > (uint128)INT64_MAX) throw BudgetExceeded("p^L exceeds 64-bit range");
    }
    return (std::int64_t)n;
}

/// Exact test of x^2 + y^2 > (sqrt(N) - Delta)^2 with Delta = M / 2^k dyadic:
/// S > N + Delta^2 - 2 Delta sqrt(N)  <=>  2 Delta sqrt(N) > N + Delta^2 - S.
struct InnerBoundTest {
    bigint n;        // N
    bigint m2;       // M^2 (Delta numerator squared)
    bigint q;        // 2^k
    bigint q2;       // 2^2k
    bigint four_m2_n_q2;

    explicit InnerBoundTest(std::int64_t N, double delta) {
        n = N;
        int e;
        const double frac = std::frexp(delta, &e);
        const auto mi = (std::int64_t)std::ldexp(frac, 53);
        const int sh = 53 - e;  // delta = mi / 2^sh (sh may be negative)
        bigint M = mi;
        if (sh >= 0) {
            q = bigint(1) << sh;
        } else {
            M <<= -sh;
            q = 1;
        }
        m2 = M * M;
        q2 = q * q;
        four_m2_n_q2 = 4 * m2 * n * q2;
    }

    bool outside_inner(std::int64_t x, std::int64_t y) const {  // strictly beyond the inner circle
        const bigint S = bigint(x) * x + bigint(y) * y;
        const bigint tn = n * q2 + m2 - S * q2;  // (N + Delta^2 - S) * 2^2k
        if (tn <= 0) return true;
        return four_m2_n_q2 > tn * tn;
    }
};

/// Exact half-plane test x*nx + y*ny > sqrt(N) - Delta with dyadic nx, ny.
struct HalfPlaneTest {
    bigint nx_s, ny_s;  // scaled by 2^1074
    bigint delta_s;
    bigint n;

    HalfPlaneTest(std::int64_t N, double nx, double ny, double delta)
        : nx_s(dyadic_scaled(nx)), ny_s(dyadic_scaled(ny)), delta_s(dyadic_scaled(delta)), n(N) {}

    bool contains(std::int64_t x, std::int64_t y) const {
        // P + Delta > sqrt(N), all scaled by 2^1074
        const bigint w = x * nx_s + y * ny_s + delta_s;
        if (w <= 0) return false;
        return w * w > n * (bigint(1) << (2 * kDyadicShift));
    }
};

/// Representability sieve for residues 0..bound: r is a sum of two squares.
std::vector<char> two_squares_sieve(std::int64_t bound) {
    std::vector<char> repr((std::size_t)bound + 1, 0);
    for (std::int64_t z = 0; z * z <= bound; ++z) {
        for (std::int64_t w = z; z * z + w * w <= bound; ++w) repr[(std::size_t)(z * z + w * w)] = 1;
    }
    return repr;
}

struct RingScanContext {
    std::int64_t N;
    InnerBoundTest inner;
    std::vector<char> sieve;

    explicit RingScanContext(const RingSpec& spec)
        : N(spec.N()), inner(N, spec.delta) {
        const double sqn = std::sqrt((double)N);
        if (spec.delta * std::pow((double)spec.p, spec.L / 2.0) > kEnumerationBudget) {
            throw BudgetExceeded("ring enumeration budget exceeded (Delta * p^(L/2) > 1e8)");
        }
        const auto bound = (std::int64_t)std::ceil(2.0 * spec.delta * sqn +
                                                   spec.delta * spec.delta) + 4;
        sieve = two_squares_sieve(std::min(bound, N));
    }

    /// Smallest y >= 0 with (x, y) beyond the inner circle (may exceed y_out).
    std::int64_t first_inside_y(std::int64_t x, double approx_inner_r2) const {
        const double rem = approx_inner_r2 - (double)x * (double)x;
        auto y = (std::int64_t)(rem > 0 ? std::sqrt(rem) : 0.0);
        if (y < 0) y = 0;
        while (!inner.outside_inner(x, y)) ++y;
        while (y > 0 && inner.outside_inner(x, y - 1)) --y;
        return y;
    }
};

}  // namespace

RingSpec RingSpec::make(int p, int L, double delta) {
    if (p < 2 || p % 4 != 1 || !is_probable_prime(bigint(p))) {
        throw std::invalid_argument("RingSpec: p must be a prime = 1 mod 4");
    }
    if (L < 1) throw std::invalid_argument("RingSpec: L must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("RingSpec: Delta must be positive");
    RingSpec s;
    s.p = p;
    s.L = L;
    s.delta = delta;
    (void)s.N();
    return s;
}

std::int64_t RingSpec::N() const { return checked_pow_i64(p, L); }

bool RingSpec::hooley_window_ok() const {
    return 2.0 * delta * std::pow((double)p, L / 2.0) < (double)N();
}

SegmentSpec SegmentSpec::make(const RingSpec& ring, double tangent_angle) {
    SegmentSpec s;
    s.ring = ring;
    s.tangent_angle = tangent_angle;
    s.nx = std::cos(tangent_angle);
    s.ny = std::sin(tangent_angle);
    return s;
}

SegmentSpec SegmentSpec::rotated90() const {
    SegmentSpec s = *this;
    s.tangent_angle += M_PI_2;
    s.nx = -ny;
    s.ny = nx;
    return s;
}

LatticeCounts count_ring_projections(const RingSpec& spec) {
    RingScanContext ctx(spec);
    const std::int64_t N = ctx.N;
    const double sqn = std::sqrt((double)N);
    const double inner_r2 = (sqn - spec.delta) * (sqn - spec.delta);
    const std::int64_t x_max = isqrt_i64(N - 1);

    LatticeCounts counts;
    std::vector<std::int64_t> buf(4096);
    for (std::int64_t x = -x_max; x <= x_max; ++x) {
        const std::int64_t y_out = isqrt_i64(N - 1 - x * x);
        const std::int64_t y_in = ctx.first_inside_y(x, inner_r2);
        if (y_in > y_out) continue;
        const std::int64_t base = N - x * x;
        for (std::int64_t y0 = y_in; y0 <= y_out; y0 += (std::int64_t)buf.size()) {
            const auto n =
                (std::size_t)std::min<std::int64_t>((std::int64_t)buf.size(), y_out - y0 + 1);
            kernels::residue_scan(base, (std::int32_t)y0, n, buf.data());
            for (std::size_t i = 0; i < n; ++i) {
                const std::int64_t y = y0 + (std::int64_t)i;
                const std::int64_t weight = (y == 0) ? 1 : 2;  // +-y at once
                counts.grid_points += weight;
                if (ctx.sieve[(std::size_t)buf[i]]) counts.projection_points += weight;
            }
        }
    }
    return counts;
}

std::vector<double> ring_projection_angles(const RingSpec& spec) {
    RingScanContext ctx(spec);
    const std::int64_t N = ctx.N;
    const double sqn = std::sqrt((double)N);
    const double inner_r2 = (sqn - spec.delta) * (sqn - spec.delta);
    const std::int64_t x_max = isqrt_i64(N - 1);

    std::vector<double> angles;
    for (std::int64_t x = -x_max; x <= x_max; ++x) {
        const std::int64_t y_out = isqrt_i64(N - 1 - x * x);
        const std::int64_t y_in = ctx.first_inside_y(x, inner_r2);
        for (std::int64_t y = y_in; y <= y_out; ++y) {
            if (!ctx.sieve[(std::size_t)(N - x * x - y * y)]) continue;
            double t = std::atan2((double)y, (double)x);
            if (t < 0) t += kTwoPi;
            angles.push_back(t);
            if (y != 0) {
                double tm = std::atan2(-(double)y, (double)x);
                if (tm < 0) tm += kTwoPi;
                angles.push_back(tm);
            }
        }
    }
    return angles;
}

std::vector<double> disk_projection_angles(const RingSpec& spec) {
    const std::int64_t N = spec.N();
    if ((double)N > 1e8) {
        throw BudgetExceeded("disk enumeration budget exceeded (p^L > 1e8)");
    }
    const auto bound = N;
    const std::vector<char> sieve = two_squares_sieve(bound);
    const std::int64_t x_max = isqrt_i64(N);
    std::vector<double> angles;
    for (std::int64_t x = -x_max; x <= x_max; ++x) {
        const std::int64_t y_max = isqrt_i64(N - x * x);
        for (std::int64_t y = -y_max; y <= y_max; ++y) {
            if (x == 0 && y == 0) continue;  // no polar angle at the origin
            if (!sieve[(std::size_t)(N - x * x - y * y)]) continue;
            double t = std::atan2((double)y, (double)x);
            if (t < 0) t += kTwoPi;
            angles.push_back(t);
        }
    }
    return angles;
}

LatticeCounts count_segment_projections(const SegmentSpec& spec) {
    RingScanContext ctx(spec.ring);
    const std::int64_t N = ctx.N;
    const double sqn = std::sqrt((double)N);
    const double delta = spec.ring.delta;
    const double inner_r2 = (sqn - delta) * (sqn - delta);
    const HalfPlaneTest half(N, spec.nx, spec.ny, delta);

    // x window around the tangency point, padded to cover the chord
    const double chord = std::sqrt(std::max(0.0, 2.0 * delta * sqn));
    const double cx = (sqn - delta) * spec.nx;
    const std::int64_t x_max = isqrt_i64(N - 1);
    const auto x_lo = std::max(-x_max, (std::int64_t)std::floor(cx - chord - delta - 2));
    const auto x_hi = std::min(x_max, (std::int64_t)std::ceil(cx + chord + delta + 2));

    LatticeCounts counts;
    for (std::int64_t x = x_lo; x <= x_hi; ++x) {
        const std::int64_t y_out = isqrt_i64(N - 1 - x * x);
        const std::int64_t y_in = ctx.first_inside_y(x, inner_r2);
        for (std::int64_t y = y_in; y <= y_out; ++y) {
            const bool repr = ctx.sieve[(std::size_t)(N - x * x - y * y)] != 0;
            if (half.contains(x, y)) {
                ++counts.grid_points;
                if (repr) ++counts.projection_points;
            }
            if (y != 0 && half.contains(x, -y)) {
                ++counts.grid_points;
                if (repr) ++counts.projection_points;
            }
        }
    }
    return counts;
}

KsResult ks_uniformity(std::vector<double> angles) {
    if (angles.empty()) throw EmptySample("ks_uniformity: empty angle sample");
    for (double& a : angles) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
    }
    std::sort(angles.begin(), angles.end());
    const auto n = (double)angles.size();
    double d = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double f = angles[i] / kTwoPi;
        d = std::max(d, ((double)i + 1.0) / n - f);
        d = std::max(d, f - (double)i / n);
    }
    // asymptotic Kolmogorov tail (documented: accurate for n >= 35)
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 101; ++k) {
        const double term = std::exp(-2.0 * (double)k * (double)k * lambda * lambda);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    p = std::clamp(p, 0.0, 1.0);
    return {d, p};
}

double cap_volume(const CapSpec& spec) {
    if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
        throw std::invalid_argument("cap_volume: epsilon must lie in (0, 1)");
    }
    const double ep = 1.0 - spec.epsilon * spec.epsilon;
    const double eta = std::acos(ep);
    return 2.0 * M_PI * spec.R * spec.R * spec.R * (eta - 0.5 * std::sin(2.0 * eta));
}

std::array<double, 4> pauli_exclusion_distances(int L) {
    if (L < 0 || L > 9) {
        throw BudgetExceeded("pauli_exclusion_distances: L must lie in [0, 9]");
    }
    const std::int64_t N = checked_pow_i64(5, L);
    const auto root = isqrt_i64(N);
    const bool square = root * root == N;  // even L: the Pauli points themselves exist

    std::array<std::int64_t, 4> best{};  // max |coord| over non-Pauli points, per axis
    for_each_s4(N, [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
        const std::array<std::int64_t, 4> v{std::abs(x), std::abs(y), std::abs(z), std::abs(w)};
        for (int axis = 0; axis < 4; ++axis) {
            if (square && v[axis] == root) continue;  // the Pauli point itself
            best[axis] = std::max(best[axis], v[axis]);
        }
    });

    const double s = std::pow(5.0, L / 2.0);
    std::array<double, 4> out{};
    for (int axis = 0; axis < 4; ++axis) {
        out[axis] = std::sqrt(std::max(0.0, 1.0 - (double)best[axis] / s));
    }
    return out;
}

double min_distance_to_pauli(int L) { return pauli_exclusion_distances(L)[0]; }

}  // namespace vfive
