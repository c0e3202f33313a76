#include "vfive/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "vfive/prng.hpp"

namespace vfive {

double ladder_step_prob(int i, double theta0) {
    if (i < 0) throw std::invalid_argument("ladder_step_prob: level must be >= 0");
    const double t = std::pow(std::tan(theta0), i + 1);  // tan(theta_i)
    const double t2 = t * t;
    const double c0 = std::cos(theta0), s0 = std::sin(theta0);
    return (c0 * c0 + t2 * s0 * s0) / (1.0 + t2);
}

namespace {

constexpr std::uint64_t kChunkTrials = 65536;

struct ChunkResult {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<std::uint64_t> histogram;
};

std::uint64_t one_trial(Rng& rng, int target, const std::vector<double>& probs,
                        ReusePolicy policy) {
    int level = 0;
    bool returned_h0 = false;
    std::uint64_t cost = 0;
    while (true) {
        if (level == 0) {
            // bottom wire needs an H0: fresh unless a descent just returned one
            cost += returned_h0 ? 1 : 2;
            returned_h0 = false;
            if (rng.next_double() < probs[0]) {
                level = 1;
                if (target == 1) return cost;
            }
            // failure at level 0 yields a stabilizer state; discard and restart
        } else {
            cost += 1;  // fresh H0 on the top wire
            if (rng.next_double() < probs[(std::size_t)level]) {
                if (++level == target) return cost;
            } else {
                --level;
                if (level == 0 && policy == ReusePolicy::ReuseReturnedH0) returned_h0 = true;
            }
        }
    }
}

ChunkResult run_chunk(std::uint64_t chunk_seed, std::uint64_t trials, int target,
                      const std::vector<double>& probs, ReusePolicy policy) {
    ChunkResult out;
    Rng rng(chunk_seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t cost = one_trial(rng, target, probs, policy);
        out.sum += (double)cost;
        out.sum_sq += (double)cost * (double)cost;
        if (cost >= out.histogram.size()) out.histogram.resize(cost + 1, 0);
        ++out.histogram[cost];
    }
    return out;
}

}  // namespace

LadderStats simulate_ladder(const LadderConfig& cfg) {
    if (cfg.target_level < 1) throw std::invalid_argument("simulate_ladder: target_level >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("simulate_ladder: trials >= 1");

    std::vector<double> probs((std::size_t)cfg.target_level);
    for (int i = 0; i < cfg.target_level; ++i) probs[(std::size_t)i] = ladder_step_prob(i, cfg.theta0);

    const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkResult> results((std::size_t)chunks);

    const int workers = std::max(1, cfg.workers);
    auto work = [&](std::uint64_t first) {
        for (std::uint64_t k = first; k < chunks; k += (std::uint64_t)workers) {
            const std::uint64_t chunk_trials =
                std::min(kChunkTrials, cfg.trials - k * kChunkTrials);
            results[(std::size_t)k] =
                run_chunk(cfg.seed + k, chunk_trials, cfg.target_level, probs, cfg.reuse_policy);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, (std::uint64_t)w);
        for (auto& t : pool) t.join();
    }

    LadderStats stats;
    stats.trials = cfg.trials;
    double sum = 0.0, sum_sq = 0.0;
    for (const ChunkResult& r : results) {
        sum += r.sum;
        sum_sq += r.sum_sq;
        if (r.histogram.size() > stats.histogram.size()) {
            stats.histogram.resize(r.histogram.size(), 0);
        }
        for (std::size_t i = 0; i < r.histogram.size(); ++i) stats.histogram[i] += r.histogram[i];
    }
    const auto n = (double)cfg.trials;
    stats.mean_h0_cost = sum / n;
    const double var = std::max(0.0, sum_sq / n - stats.mean_h0_cost * stats.mean_h0_cost);
    stats.stderr_mean = std::sqrt(var / n);

    // median: average of the two central order statistics
    const std::uint64_t lo_rank = (cfg.trials + 1) / 2, hi_rank = cfg.trials / 2 + 1;
    std::uint64_t seen = 0;
    double lo_val = 0, hi_val = 0;
    bool lo_set = false, hi_set = false;
    for (std::size_t c = 0; c < stats.histogram.size(); ++c) {
        seen += stats.histogram[c];
        if (!lo_set && seen >= lo_rank) {
            lo_val = (double)c;
            lo_set = true;
        }
        if (!hi_set && seen >= hi_rank) {
            hi_val = (double)c;
            hi_set = true;
            break;
        }
    }
    stats.median_h0_cost = (lo_val + hi_val) / 2.0;
    return stats;
}

double analytic_ladder_cost(int target_level, double theta0, ReusePolicy policy) {
    if (target_level < 1 || target_level > 10) {
        throw std::invalid_argument("analytic_ladder_cost: target_level must lie in [1, 10]");
    }
    const int nv = target_level + 1;  // D_none, D_ret, D_hold[1..target-1]
    std::vector<std::vector<double>> m((std::size_t)nv,
                                       std::vector<double>((std::size_t)nv + 1, 0.0));
    std::vector<double> p((std::size_t)target_level);
    for (int i = 0; i < target_level; ++i) p[(std::size_t)i] = ladder_step_prob(i, theta0);

    auto hold_var = [&](int i) { return i + 1; };  // valid for 1 <= i < target
    auto x_coef = [&](int j) { return j == target_level ? -1 : hold_var(j); };  // -1: absorbed

    // D_none = 2 + p0 * X1 + (1 - p0) * D_none
    m[0][0] = p[0];
    if (x_coef(1) >= 0) m[0][(std::size_t)x_coef(1)] = -p[0];
    m[0][(std::size_t)nv] = 2.0;

    // D_ret: reuse saves one fresh state on the rebuild's first step
    if (policy == ReusePolicy::ReuseReturnedH0) {
        m[1][1] = 1.0;
        m[1][0] = -(1.0 - p[0]);
        if (x_coef(1) >= 0) m[1][(std::size_t)x_coef(1)] += -p[0];
        m[1][(std::size_t)nv] = 1.0;
    } else {
        m[1][1] = 1.0;
        m[1][0] = -1.0;
        m[1][(std::size_t)nv] = 0.0;
    }

    // D_hold[i] = 1 + p_i * X_{i+1} + (1 - p_i) * Y_{i-1}
    for (int i = 1; i < target_level; ++i) {
        auto& row = m[(std::size_t)hold_var(i)];
        row[(std::size_t)hold_var(i)] += 1.0;
        if (x_coef(i + 1) >= 0) row[(std::size_t)x_coef(i + 1)] += -p[(std::size_t)i];
        const int down = (i - 1 >= 1) ? hold_var(i - 1) : 1;  // level 0 -> D_ret state
        row[(std::size_t)down] += -(1.0 - p[(std::size_t)i]);
        row[(std::size_t)nv] = 1.0;
    }

    // Gauss-Jordan with partial pivoting; row `col` ends up owning column `col`
    for (int col = 0; col < nv; ++col) {
        int pivot = col;
        for (int r = col + 1; r < nv; ++r) {
            if (std::abs(m[(std::size_t)r][(std::size_t)col]) >
                std::abs(m[(std::size_t)pivot][(std::size_t)col])) {
                pivot = r;
            }
        }
        std::swap(m[(std::size_t)col], m[(std::size_t)pivot]);
        const double diag = m[(std::size_t)col][(std::size_t)col];
        if (std::abs(diag) < 1e-300) throw std::logic_error("analytic_ladder_cost: singular system");
        for (int c = col; c <= nv; ++c) m[(std::size_t)col][(std::size_t)c] /= diag;
        for (int r = 0; r < nv; ++r) {
            if (r == col) continue;
            const double f = m[(std::size_t)r][(std::size_t)col];
            if (f == 0.0) continue;
            for (int c = col; c <= nv; ++c) {
                m[(std::size_t)r][(std::size_t)c] -= f * m[(std::size_t)col][(std::size_t)c];
            }
        }
    }
    return m[0][(std::size_t)nv];
}

VGateCost v_gate_cost(const CostModel& model, int attempts_before_backoff) {
    if (attempts_before_backoff < 1) {
        throw std::invalid_argument("v_gate_cost: attempts_before_backoff must be >= 1");
    }
    VGateCost out;
    out.expected_attempts = 1.0 / model.success_prob;
    out.per_attempt_resource.resize((std::size_t)attempts_before_backoff);
    out.cumulative_cost.resize((std::size_t)attempts_before_backoff);
    double cumulative = model.t_per_attempt;
    for (int k = 0; k < attempts_before_backoff; ++k) {
        double r;
        if (k == 0) {
            r = model.c_h2;
        } else if (k == 1) {
            r = 4.0 * model.c_h2;  // two expected preparations of a 2-state resource
        } else {
            r = out.per_attempt_resource[(std::size_t)k - 1] * 4.0;  // geometric estimate
        }
        out.per_attempt_resource[(std::size_t)k] = r;
        cumulative += r;
        out.cumulative_cost[(std::size_t)k] = cumulative;
    }
    out.success_path_cost = model.t_per_attempt + out.per_attempt_resource[0];

    const double q = 1.0 - model.success_prob;
    double expected = model.t_per_attempt;
    double weight = 1.0;
    for (int k = 0; k < attempts_before_backoff; ++k) {
        expected += weight * out.per_attempt_resource[(std::size_t)k];
        weight *= q;
    }
    expected += weight * model.backoff_cost;
    out.expected_h0 = expected;
    return out;
}

V3Angles v3_angle_identities() {
    V3Angles a;
    a.theta_prime = std::acos(3.0 / 5.0);
    a.theta = a.theta_prime + M_PI;
    a.theta2 = std::atan(std::pow(std::tan(M_PI / 8.0), 3));
    a.relation_residual = a.theta_prime - (2.0 * a.theta2 + M_PI / 4.0);
    return a;
}

}  // namespace vfive
