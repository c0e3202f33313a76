#include "vfive/randomized.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "vfive/clock.hpp"
#include "vfive/errors.hpp"
#include "vfive/numtheory.hpp"
#include "vfive/prng.hpp"

namespace vfive {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kMaxLevel = 54;              // 5^L must fit in 128 bits with headroom
constexpr std::int64_t kMaterializeCap = 1 << 18;

double wrap_angle(double t) {
    t = std::remainder(t, kTwoPi);  // [-pi, pi]
    if (t <= -M_PI) t += kTwoPi;
    return t;
}

}  // namespace

Precision Precision::of(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("Precision: epsilon must lie in (0, 1)");
    }
    return Precision{eps};
}

RotationTarget RotationTarget::around_z(double theta) {
    return {Axis::Z, wrap_angle(theta)};
}

RotationTarget RotationTarget::around_x(double theta) {
    return {Axis::X, wrap_angle(theta)};
}

UnitVector4 RotationTarget::value() const {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    switch (axis) {
        case Axis::X: return UnitVector4::normalized(c, s, 0, 0);
        case Axis::Y: return UnitVector4::normalized(c, 0, s, 0);
        case Axis::Z: break;
    }
    return UnitVector4::normalized(c, 0, 0, s);
}

int choose_level(Precision eps) {
    const double e = eps.epsilon;
    const double threshold = 2.0 * std::pow(5.0, -4.0);
    if (!(e < threshold)) {
        throw EpsilonTooLarge("randomized approximation requires eps < 2*5^-4 = " +
                              std::to_string(threshold));
    }
    int L = (int)std::floor(4.0 * std::log(2.0 / e) / std::log(5.0) + 1e-9);
    while (!(e < 2.0 * std::pow(5.0, -L / 4.0))) --L;
    while (e < 2.0 * std::pow(5.0, -(L + 1) / 4.0)) ++L;
    return L;
}

SearchWindow SearchWindow::build(double theta, double eps, int L) {
    SearchWindow w;
    w.L = L;
    w.phi = std::sqrt(2.0) * eps * (1.0 - eps * eps / 4.0);
    const double s = std::pow(5.0, L / 2.0);
    w.w_lo = (std::int64_t)std::ceil(s * std::sin(theta / 2 - w.phi));
    w.w_hi = (std::int64_t)std::floor(s * std::sin(theta / 2 + w.phi));
    return w;
}

double quaternion_distance(const LipschitzQuaternion& q, int level, const UnitVector4& target) {
    const long double s = powl(5.0L, level / 2.0L);
    const long double dot = (q.a.convert_to<long double>() * (long double)target.alpha() +
                             q.b.convert_to<long double>() * (long double)target.beta() +
                             q.c.convert_to<long double>() * (long double)target.gamma() +
                             q.d.convert_to<long double>() * (long double)target.delta()) /
                            s;
    const long double om = 1.0L - fabsl(dot);
    return om > 0.0L ? (double)sqrtl(om) : 0.0;
}

bool distance_below_exact(const LipschitzQuaternion& q, int level, const UnitVector4& target,
                          double eps) {
    // dist < eps  <=>  |dot|^2 > (1 - eps^2)^2 * 5^L with dot scaled by 2^1074.
    const bigint scaled_dot = q.a * dyadic_scaled(target.alpha()) +
                              q.b * dyadic_scaled(target.beta()) +
                              q.c * dyadic_scaled(target.gamma()) +
                              q.d * dyadic_scaled(target.delta());
    const bigint em = dyadic_scaled(eps);
    const bigint one = bigint(1) << 2148;          // (2^1074)^2
    const bigint one_minus_eps2 = one - em * em;   // (1 - eps^2) * 2^2148
    if (one_minus_eps2 <= 0) return true;          // eps >= 1: everything qualifies
    bigint pow5 = 1;
    for (int i = 0; i < level; ++i) pow5 *= 5;
    return scaled_dot * scaled_dot * one > one_minus_eps2 * one_minus_eps2 * pow5;
}

namespace {

struct Candidate {
    std::int64_t u = 0, w = 0;  // identity-side and Z-side coordinates
    bigint b, c;
};

struct LevelScan {
    double theta;      // reduced angle, in [-pi/4, pi/4]
    double accept_eps; // acceptance precision for this scan
    bool general;
    int mr_rounds;
    std::uint64_t seed;

    std::optional<Candidate> run(int L, Rng& rng) const;

private:
    std::optional<Candidate> scan_line(std::int64_t w, uint128 pow5, double s, double c_half,
                                       double s_half) const;
    std::optional<TwoSquares> complete(uint128 r) const;
};

std::optional<TwoSquares> LevelScan::complete(uint128 r) const {
    const bigint rn = to_bigint(r);
    FactorOptions fo;
    fo.seed = seed;
    if (general) {
        auto res = two_squares_decompose(rn, fo);
        if (res.found()) return res.value;
        return std::nullopt;
    }
    // paper-style completion: primality only (callers restrict to even/even,
    // which forces r = 1 mod 4)
    if (!is_probable_prime(rn, mr_rounds, seed)) return std::nullopt;
    auto res = two_squares_decompose(rn, fo);
    if (!res.found()) throw std::logic_error("prime = 1 mod 4 must decompose");
    return res.value;
}

std::optional<Candidate> LevelScan::scan_line(std::int64_t w, uint128 pow5, double s,
                                              double c_half, double s_half) const {
    if (!general && (w & 1)) return std::nullopt;
    const uint128 ww = (uint128)((int128)w * w);
    if (ww > pow5) return std::nullopt;
    const double cut = (1.0 - accept_eps * accept_eps) * s;
    const double u_min = (cut - (double)w * s_half) / c_half;
    std::int64_t u = (std::int64_t)isqrt_u128(pow5 - ww);
    const int step = general ? 1 : 2;
    if (!general && (u & 1)) --u;
    for (; (double)u > u_min; u -= step) {
        const uint128 uu = (uint128)((int128)u * u);
        const uint128 r = pow5 - uu - ww;
        if (auto ts = complete(r)) {
            Candidate cand;
            cand.u = u;
            cand.w = w;
            cand.b = ts->x;
            cand.c = ts->y;
            return cand;
        }
    }
    return std::nullopt;
}

std::optional<Candidate> LevelScan::run(int L, Rng& rng) const {
    const uint128 pow5 = pow5_u128(L);
    const double s = std::pow(5.0, L / 2.0);
    const double c_half = std::cos(theta / 2), s_half = std::sin(theta / 2);
    const SearchWindow win = SearchWindow::build(theta, accept_eps, L);
    if (win.w_hi < win.w_lo) return std::nullopt;
    const std::int64_t count = win.size();

    if (count <= kMaterializeCap) {
        std::vector<std::int64_t> sw((std::size_t)count);
        for (std::int64_t i = 0; i < count; ++i) sw[(std::size_t)i] = win.w_lo + i;
        // lazy Fisher-Yates: sample without replacement until the window is spent
        for (std::int64_t t = 0; t < count; ++t) {
            const std::int64_t j = t + (std::int64_t)rng.next_below((std::uint64_t)(count - t));
            std::swap(sw[(std::size_t)t], sw[(std::size_t)j]);
            if (auto cand = scan_line(sw[(std::size_t)t], pow5, s, c_half, s_half)) return cand;
        }
        return std::nullopt;
    }

    // window too large to materialize: rejection sampling with a dedup set
    std::unordered_set<std::int64_t> seen;
    constexpr std::uint64_t kAttemptCap = 10'000'000;
    for (std::uint64_t a = 0; a < kAttemptCap && (std::int64_t)seen.size() < count; ++a) {
        const std::int64_t w = win.w_lo + (std::int64_t)rng.next_below((std::uint64_t)count);
        if (!seen.insert(w).second) continue;
        if (auto cand = scan_line(w, pow5, s, c_half, s_half)) return cand;
    }
    return std::nullopt;
}

Circuit clifford_prefix(int quarter_turns) {
    Circuit c;
    switch (((quarter_turns % 4) + 4) % 4) {
        case 1: c.append(GateToken::S); break;
        case 2: c.append(GateToken::Z); break;
        case 3: c.append(GateToken::Sd); break;
        default: break;
    }
    return c;
}

/// Shared Rz synthesis: Clifford-reduce theta, then scan levels
/// L_start .. L_start + max_escalations with the given acceptance precision.
ApproxResult rz_core(double theta, int L_start, double accept_eps, double verify_eps,
                     std::uint64_t seed, const RandOptions& opts, int max_escalations) {
    const double t0 = now_ms();
    const double tw = wrap_angle(theta);
    const int k = (int)std::lround(tw / M_PI_2);
    const double tr = tw - k * M_PI_2;
    const Circuit prefix = clifford_prefix(k);
    const UnitVector4 target = RotationTarget::around_z(tw).value();
    const UnitVector4 target_reduced = RotationTarget::around_z(tr).value();

    if (std::sin(tr / 2) == 0.0) {
        // exactly a Clifford power: the prefix alone is the circuit
        ApproxResult res;
        res.circuit = prefix;
        res.achieved_distance = trace_distance(prefix.evaluate(), target);
        res.level = 0;
        res.seed = seed;
        res.millis = now_ms() - t0;
        if (res.achieved_distance < verify_eps) return res;
    }

    LevelScan scan;
    scan.theta = tr;
    scan.accept_eps = accept_eps;
    scan.general = opts.general_completion;
    scan.mr_rounds = opts.mr_rounds;
    scan.seed = derive_seed(seed, 0x4d52);

    Rng rng(derive_seed(seed, 0xa1));
    for (int esc = 0; esc <= max_escalations; ++esc) {
        const int L = L_start + esc;
        if (L > kMaxLevel) break;
        auto cand = scan.run(L, rng);
        if (!cand) continue;

        LipschitzQuaternion q{cand->u, cand->b, cand->c, cand->w};
        if (norm(q) != to_bigint(pow5_u128(L))) {
            throw std::logic_error("randomized candidate violates the four-square identity");
        }
        const double dist = quaternion_distance(q, L, target_reduced);
        const bool ok = (verify_eps < 1e-7)
                            ? distance_below_exact(q, L, target_reduced, verify_eps)
                            : dist < verify_eps;
        if (!ok) continue;

        const ExactUnitary ex = ExactUnitary::from_quaternion_or_throw(std::move(q)).reduced();
        ApproxResult res;
        res.circuit = prefix + exact_synthesize(ex);
        res.achieved_distance = dist;
        res.level = L;
        res.seed = seed;
        res.millis = now_ms() - t0;
        return res;
    }
    throw WindowExhausted("randomized approximation: window exhausted through level " +
                          std::to_string(std::min(L_start + max_escalations, kMaxLevel)));
}

}  // namespace

ApproxResult approx_rz(double theta, Precision eps, std::uint64_t seed,
                       const RandOptions& opts) {
    const int L = choose_level(eps);
    return rz_core(theta, L, eps.epsilon, eps.epsilon, seed, opts, opts.max_escalations);
}

ApproxResult approx_rz_at_level(double theta, int level, std::uint64_t seed,
                                const RandOptions& opts) {
    if (level < 1 || level > kMaxLevel) {
        throw std::invalid_argument("approx_rz_at_level: level out of range");
    }
    const double bound = 2.0 * std::pow(5.0, -level / 4.0);
    return rz_core(theta, level, bound, bound, seed, opts, 0);
}

ApproxResult approx_unitary(const UnitVector4& g, Precision eps, std::uint64_t seed,
                            const RandOptions& opts, UnitaryBudget budget) {
    const double t0 = now_ms();
    // per-axis threshold check (each leg runs at eps/3)
    if (!(eps.epsilon / 3.0 < 2.0 * std::pow(5.0, -4.0))) {
        throw EpsilonTooLarge("approx_unitary requires eps/3 < 2*5^-4");
    }

    const double c2 = std::hypot(g.alpha(), g.delta());
    const double s2 = std::hypot(g.beta(), g.gamma());

    if (s2 < 1e-12) {
        // degenerate middle angle: a plain Z rotation
        const double theta_z = 2.0 * std::atan2(g.delta(), g.alpha());
        ApproxResult res = approx_rz(theta_z, eps, seed, opts);
        res.achieved_distance = trace_distance(res.circuit.evaluate(), g);
        res.millis = now_ms() - t0;
        return res;
    }

    // Z-X-Z Euler angles: g = Rz(t1) Rx(t2) Rz(t3)
    const double u = std::atan2(g.delta(), g.alpha());
    const double v = std::atan2(g.gamma(), g.beta());
    const double t1 = u + v;
    const double t2 = 2.0 * std::atan2(s2, c2);
    const double t3 = u - v;

    const Precision leg_eps = Precision::of(eps.epsilon / 3.0);
    int legs_start;
    if (budget == UnitaryBudget::PaperBudget) {
        legs_start = choose_level(eps);
    } else {
        legs_start = choose_level(leg_eps);
    }

    ApproxResult parts[3];
    const double angles[3] = {t1, t2, t3};
    for (int i = 0; i < 3; ++i) {
        parts[i] = rz_core(angles[i], legs_start, leg_eps.epsilon, leg_eps.epsilon,
                           derive_seed(seed, (std::uint64_t)i), opts, opts.max_escalations);
    }

    ApproxResult res;
    res.circuit = parts[0].circuit;
    res.circuit.append(GateToken::H);
    res.circuit.append(parts[1].circuit);
    res.circuit.append(GateToken::H);
    res.circuit.append(parts[2].circuit);
    res.achieved_distance = trace_distance(res.circuit.evaluate(), g);
    res.level = std::max({parts[0].level, parts[1].level, parts[2].level});
    res.seed = seed;
    res.millis = now_ms() - t0;
    if (!(res.achieved_distance < eps.epsilon)) {
        throw std::logic_error("approx_unitary: triangle-inequality budget violated");
    }
    return res;
}

}  // namespace vfive
