#include "vfive/direct_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "vfive/clock.hpp"
#include "vfive/exact_synth.hpp"
#include "vfive/kernels.hpp"
#include "vfive/numtheory.hpp"

namespace vfive {

int starting_level(Precision eps) {
    const double e = eps.epsilon;
    int L = (int)std::ceil(3.0 * std::log(1.0 / e) / std::log(5.0) - 1e-9);
    if (L < 1) L = 1;
    while (std::pow(5.0, -L / 3.0) > e) ++L;
    while (L > 1 && std::pow(5.0, -(L - 1) / 3.0) <= e) --L;
    return L;
}

std::vector<SearchPlan> escalation_schedule(Precision eps) {
    const int L0 = starting_level(eps);
    const int max_L =
        (int)std::ceil(4.0 * std::log(2.0 / eps.epsilon) / std::log(5.0) - 1e-9) + 2;
    std::vector<SearchPlan> plans;
    int round = 0;
    for (int L = L0; L <= max_L; ++L) {
        plans.push_back({L, eps.epsilon, round++, max_L});
        plans.push_back({L, 3.0 * eps.epsilon, round++, max_L});
    }
    return plans;
}

namespace {

struct Pass64 {
    using Res = std::int64_t;
    using Key = std::uint64_t;
    using Coord = std::int32_t;
    static constexpr bool kKernel = true;
};

struct Pass128 {
    using Res = int128;
    using Key = uint128;
    using Coord = std::int64_t;
    static constexpr bool kKernel = false;
};

struct Hit {
    std::int64_t a, b, c, d;
};

struct PassInput {
    const UnitVector4* g;
    double eps;  // acceptance precision (true trace distance)
    double tau;  // per-block tolerance of this pass
    int L;
    const DirectOptions* opts;
};

bool accept_candidate(const PassInput& in, std::int64_t a, std::int64_t b, std::int64_t c,
                      std::int64_t d) {
    const LipschitzQuaternion q{a, b, c, d};
    if (in.eps < 1e-7) return distance_below_exact(q, in.L, *in.g, in.eps * (1 + 1e-15));
    return quaternion_distance(q, in.L, *in.g) <= in.eps;
}

template <class T>
std::optional<Hit> run_pass(const PassInput& in) {
    using Res = typename T::Res;
    using Key = typename T::Key;
    using Coord = typename T::Coord;

    const int L = in.L;
    const uint128 pow5u = pow5_u128(L);
    const Res pow5 = (Res)pow5u;
    const double s = std::pow(5.0, L / 2.0);
    const double rad = in.tau * s;
    const double alpha = in.g->alpha(), beta = in.g->beta();
    const double gamma = in.g->gamma(), delta = in.g->delta();

    // Residue window: a^2 + d^2 lies in [5^L (sigma - tau)^2, 5^L (sigma + tau)^2],
    // widened a couple of integers against rounding.
    const double sigma = std::hypot(alpha, delta);
    const long double p5ld = (long double)pow5u;
    const long double lo_f = std::max(0.0, sigma - in.tau);
    const long double hi_f = std::min(1.0, sigma + in.tau);
    Res lo_r = (Res)std::max(0.0L, floorl(p5ld * lo_f * lo_f) - 2);
    Res hi_r = (Res)std::min(p5ld + 0.5L, ceill(p5ld * hi_f * hi_f) + 2);
    if (hi_r > pow5) hi_r = pow5;

    const std::size_t expected =
        std::min((std::size_t)(M_PI * rad * rad) + 64, in.opts->max_table_entries);
    ResidueTableT<Key, Coord> table(expected, in.opts->max_table_entries,
                                    in.opts->keep_all_collisions);

    // Build phase: sweep the (b, c) disk of radius tau*5^(L/2) about
    // (beta, gamma)*5^(L/2), hashing residues that pass the window and the
    // two-squares filter.
    const auto b_lo = (std::int64_t)std::ceil(beta * s - rad) - 1;
    const auto b_hi = (std::int64_t)std::floor(beta * s + rad) + 1;
    std::vector<std::int64_t> buf(4096);
    for (std::int64_t b = b_lo; b <= b_hi; ++b) {
        const double off = (double)b - beta * s;
        const double half2 = rad * rad - off * off;
        const double half = half2 > 0 ? std::sqrt(half2) : 0.0;
        const auto c_lo = (std::int64_t)std::ceil(gamma * s - half) - 1;
        const auto c_hi = (std::int64_t)std::floor(gamma * s + half) + 1;
        const Res base = pow5 - (Res)((int128)b * b);
        if constexpr (T::kKernel) {
            for (std::int64_t c0 = c_lo; c0 <= c_hi; c0 += (std::int64_t)buf.size()) {
                const auto n =
                    (std::size_t)std::min<std::int64_t>((std::int64_t)buf.size(), c_hi - c0 + 1);
                kernels::residue_scan((std::int64_t)base, (std::int32_t)c0, n, buf.data());
                for (std::size_t i = 0; i < n; ++i) {
                    const std::int64_t r = buf[i];
                    if (r < (std::int64_t)lo_r || r > (std::int64_t)hi_r) continue;
                    if (in.opts->use_filter &&
                        is_sum_two_squares_filter_u64((std::uint64_t)r,
                                                      in.opts->filter_trial_bound) ==
                            Filter3::No) {
                        continue;
                    }
                    table.insert((Key)r, (Coord)b, (Coord)(c0 + (std::int64_t)i));
                }
            }
        } else {
            for (std::int64_t c = c_lo; c <= c_hi; ++c) {
                const Res r = base - (Res)((int128)c * c);
                if (r < lo_r || r > hi_r) continue;
                if (in.opts->use_filter &&
                    is_sum_two_squares_filter_u128((uint128)r, in.opts->filter_trial_bound) ==
                        Filter3::No) {
                    continue;
                }
                table.insert((Key)r, (Coord)b, (Coord)c);
            }
        }
    }

    // Probe phase: (a, d) disk about (alpha, delta)*5^(L/2); a ordered by
    // distance from the center (ties toward smaller a), d ascending.
    const auto a_lo = (std::int64_t)std::ceil(alpha * s - rad) - 1;
    const auto a_hi = (std::int64_t)std::floor(alpha * s + rad) + 1;
    const double a_center = alpha * s;

    std::int64_t start = (std::int64_t)std::llround(a_center);
    start = std::clamp(start, a_lo, a_hi);
    std::int64_t left = start, right = start + 1;

    auto probe_line = [&](std::int64_t a) -> std::optional<Hit> {
        const double off = (double)a - a_center;
        const double half2 = rad * rad - off * off;
        const double half = half2 > 0 ? std::sqrt(half2) : 0.0;
        const auto d_lo = (std::int64_t)std::ceil(delta * s - half) - 1;
        const auto d_hi = (std::int64_t)std::floor(delta * s + half) + 1;
        const Res base = (Res)((int128)a * a);
        std::optional<Hit> found;
        auto check = [&](std::int64_t d, Res key) -> bool {
            return table.for_each_match((Key)key, [&](Coord b, Coord c) {
                // key match makes a^2+b^2+c^2+d^2 = 5^L automatic; re-verify anyway
                const uint128 nrm = (uint128)((int128)a * a) + (uint128)((int128)b * b) +
                                    (uint128)((int128)c * c) + (uint128)((int128)d * d);
                if (nrm != pow5u) return false;
                if (!accept_candidate(in, a, b, c, d)) return false;
                found = Hit{a, b, c, d};
                return true;
            });
        };
        if constexpr (T::kKernel) {
            for (std::int64_t d0 = d_lo; d0 <= d_hi; d0 += (std::int64_t)buf.size()) {
                const auto n =
                    (std::size_t)std::min<std::int64_t>((std::int64_t)buf.size(), d_hi - d0 + 1);
                kernels::sum_squares_scan((std::int64_t)base, (std::int32_t)d0, n, buf.data());
                for (std::size_t i = 0; i < n; ++i) {
                    if (check(d0 + (std::int64_t)i, buf[i])) return found;
                }
            }
        } else {
            for (std::int64_t d = d_lo; d <= d_hi; ++d) {
                if (check(d, base + (Res)((int128)d * d))) return found;
            }
        }
        return std::nullopt;
    };

    while (left >= a_lo || right <= a_hi) {
        bool pick_left;
        if (left < a_lo) {
            pick_left = false;
        } else if (right > a_hi) {
            pick_left = true;
        } else {
            pick_left = std::abs((double)left - a_center) <= std::abs((double)right - a_center);
        }
        const std::int64_t a = pick_left ? left-- : right++;
        if (auto hit = probe_line(a)) return hit;
    }
    return std::nullopt;
}

/// On-grid short circuit: targets that are exactly level-l points synthesize
/// directly, so e.g. a V1-valued target returns "V1". The 1e-7 distance gate
/// reflects the sqrt(1 - |dot|) floor near coincident points; genuine non-hits
/// at these levels sit orders of magnitude further away.
std::optional<ApproxResult> grid_snap(const UnitVector4& g, int max_level) {
    for (int l = 0; l <= max_level; ++l) {
        const double s = std::pow(5.0, l / 2.0);
        const auto a = (std::int64_t)std::llround(g.alpha() * s);
        const auto b = (std::int64_t)std::llround(g.beta() * s);
        const auto c = (std::int64_t)std::llround(g.gamma() * s);
        const auto d = (std::int64_t)std::llround(g.delta() * s);
        const uint128 nrm = (uint128)((int128)a * a) + (uint128)((int128)b * b) +
                            (uint128)((int128)c * c) + (uint128)((int128)d * d);
        if (nrm != pow5_u128(l)) continue;
        const LipschitzQuaternion q{a, b, c, d};
        const double dist = quaternion_distance(q, l, g);
        if (dist > 1e-7) continue;
        ApproxResult res;
        res.circuit = exact_synthesize(ExactUnitary::from_quaternion_or_throw(q).reduced());
        res.achieved_distance = dist;
        res.level = l;
        return res;
    }
    return std::nullopt;
}

}  // namespace

ApproxResult direct_search(const UnitVector4& g, Precision eps, const DirectOptions& opts) {
    const double t0 = now_ms();
    if (!(eps.epsilon > 0.0 && eps.epsilon <= 0.1)) {
        throw EpsilonTooLarge("direct search requires eps in (0, 0.1]");
    }

    const int L0 = starting_level(eps);
    const int max_L =
        (int)std::ceil(4.0 * std::log(2.0 / eps.epsilon) / std::log(5.0) - 1e-9) + 2;

    if (opts.enable_grid_snap) {
        if (auto snapped = grid_snap(g, L0)) {
            snapped->millis = now_ms() - t0;
            return *snapped;
        }
    }

    const int L_begin = std::max(1, L0 + opts.start_offset);
    for (int L = L_begin; L <= max_L; ++L) {
        for (const double tau : {eps.epsilon, 3.0 * eps.epsilon}) {
            PassInput in{&g, eps.epsilon, tau, L, &opts};
            const auto hit = (L <= 26) ? run_pass<Pass64>(in) : run_pass<Pass128>(in);
            if (!hit) continue;
            const LipschitzQuaternion q{hit->a, hit->b, hit->c, hit->d};
            ApproxResult res;
            res.circuit = exact_synthesize(ExactUnitary::from_quaternion_or_throw(q).reduced());
            res.achieved_distance = quaternion_distance(q, L, g);
            res.level = L;
            res.millis = now_ms() - t0;
            return res;
        }
    }
    throw SearchExhausted("direct search exhausted levels " + std::to_string(L_begin) + ".." +
                          std::to_string(max_L) + " at eps " + std::to_string(eps.epsilon));
}

}  // namespace vfive
