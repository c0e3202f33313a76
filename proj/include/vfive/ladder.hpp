#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace vfive {

enum class ReusePolicy { DiscardOnDescent, ReuseReturnedH0 };

struct LadderConfig {
    double theta0 = M_PI / 8.0;
    int target_level = 2;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    ReusePolicy reuse_policy = ReusePolicy::DiscardOnDescent;
    int workers = 1;  // trials split into fixed 65536-trial chunks; chunk k
                      // is seeded with seed + k, so results do not depend on
                      // worker count
};

struct LadderStats {
    double mean_h0_cost = 0.0;
    double median_h0_cost = 0.0;
    double stderr_mean = 0.0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> histogram;  // histogram[c] = trials costing c
};

/// p_{m=0,i}: success probability of the ladder step with a level-i state on
/// the bottom wire (cot theta_i = cot^(i+1) theta_0).
double ladder_step_prob(int i, double theta0 = M_PI / 8.0);

/// Monte Carlo of the level random walk; bit-reproducible for a fixed seed
/// and trial count.
LadderStats simulate_ladder(const LadderConfig& cfg);

/// Expected fresh-state cost of reaching target_level, from the absorbing
/// random walk's linear system. Oracle for the Monte Carlo.
double analytic_ladder_cost(int target_level, double theta0, ReusePolicy policy);

struct CostModel {
    double c_h2 = 4.35;          // resource-state cost of one attempt, in fresh states
    double t_per_attempt = 1.0;  // fixed per-gate cost paid once
    double success_prob = 0.5;
    int max_attempts = 3;        // attempts before backing off
    double backoff_cost = 0.0;   // user-supplied constant for the fallback
};

struct VGateCost {
    double expected_h0 = 0.0;         // expectation over the attempt series
    double success_path_cost = 0.0;   // cost when the first attempt succeeds
    double expected_attempts = 0.0;   // 1 / success_prob
    /// resource cost of attempt k (index 0 = first attempt); entries past the
    /// second grow geometrically (factor 4) and are estimates
    std::vector<double> per_attempt_resource;
    /// cumulative cost if attempt k is the first success
    std::vector<double> cumulative_cost;
};

VGateCost v_gate_cost(const CostModel& model, int attempts_before_backoff);

struct V3Angles {
    double theta;        // acos(-3/5) + 2pi branch: the Z rotation realizing V3
    double theta_prime;  // acos(3/5), pi away
    double theta2;       // ladder angle at level 2
    double relation_residual;  // theta_prime - (2*theta2 + pi/4)
};

V3Angles v3_angle_identities();

}  // namespace vfive
