// vfive: V-basis circuit synthesis toolkit.
//
// Subcommands: exact-synth, approx, bench, conjecture, ladder.
// Exit codes: 0 ok, 2 bad input, 3 search failure, 4 budget exceeded.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vfive/clock.hpp"
#include "vfive/direct_search.hpp"
#include "vfive/errors.hpp"
#include "vfive/exact_synth.hpp"
#include "vfive/geometry_lab.hpp"
#include "vfive/ladder.hpp"
#include "vfive/numtheory.hpp"
#include "vfive/prng.hpp"
#include "vfive/randomized.hpp"
#include "vfive/sampling.hpp"

namespace {

using nlohmann::json;
using namespace vfive;

constexpr const char* kReportHeader = "# vfive-report v1";

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Input: return 2;
        case ErrorKind::Search: return 3;
        case ErrorKind::Budget: return 4;
    }
    return 1;
}

std::uint64_t seed_or_entropy(std::optional<std::uint64_t> seed, std::ostream& note) {
    if (seed) return *seed;
    std::random_device rd;
    const std::uint64_t s = ((std::uint64_t)rd() << 32) ^ rd();
    note << "# seed " << s << " (drawn from entropy; pass --seed to reproduce)\n";
    return s;
}

UnitVector4 parse_target(const std::string& text) {
    std::array<double, 4> v{};
    std::stringstream ss(text);
    std::string piece;
    for (int i = 0; i < 4; ++i) {
        if (!std::getline(ss, piece, ',')) {
            throw Error(ErrorKind::Input, "--target expects alpha,beta,gamma,delta");
        }
        v[(std::size_t)i] = std::stod(piece);
    }
    return UnitVector4::normalized(v[0], v[1], v[2], v[3]);
}

json result_json(const ApproxResult& res) {
    return json{{"circuit", res.circuit.to_string()}, {"v_count", res.circuit.v_count()},
                {"distance", res.achieved_distance},  {"level", res.level},
                {"seed", res.seed},                   {"millis", res.millis}};
}

DirectOptions direct_options_from_env(std::size_t cli_cap) {
    DirectOptions opts;
    opts.max_table_entries = cli_cap;
    if (const char* env = std::getenv("VFIVE_MAX_TABLE")) {
        opts.max_table_entries = (std::size_t)std::strtoull(env, nullptr, 10);
    }
    return opts;
}

// ---------------------------------------------------------------------------
// exact-synth
// ---------------------------------------------------------------------------

int cmd_exact_synth(const std::string& quat_text) {
    const auto q = parse_quaternion(quat_text);
    if (!q) throw Error(ErrorKind::Input, "--quaternion expects a,b,c,d (base-10 integers)");
    const auto u = ExactUnitary::from_quaternion(*q);
    if (!u) {
        throw NotRepresentableError("norm " + norm(*q).str() + " is not a power of 5");
    }
    const Circuit circuit = exact_synthesize(*u);
    std::cout << circuit.to_string() << "\n";
    std::cout << json{{"circuit", circuit.to_string()},
                      {"v_count", circuit.v_count()},
                      {"level", u->level()}}
                     .dump()
              << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// approx
// ---------------------------------------------------------------------------

int cmd_approx(std::optional<double> rz, std::optional<std::string> target_text, double eps,
               const std::string& method, std::optional<std::uint64_t> seed_opt, bool general,
               std::size_t max_table, bool all_collisions) {
    const std::uint64_t seed = seed_or_entropy(seed_opt, std::cout);
    const Precision prec = Precision::of(eps);

    ApproxResult res;
    UnitVector4 target = UnitVector4::identity();
    if (rz && target_text) throw Error(ErrorKind::Input, "pass either --rz or --target");
    if (rz) {
        target = RotationTarget::around_z(*rz).value();
    } else if (target_text) {
        target = parse_target(*target_text);
    } else {
        throw Error(ErrorKind::Input, "one of --rz or --target is required");
    }

    if (method == "rand") {
        RandOptions opts;
        opts.general_completion = general;
        res = rz ? approx_rz(*rz, prec, seed, opts) : approx_unitary(target, prec, seed, opts);
    } else if (method == "direct") {
        DirectOptions opts = direct_options_from_env(max_table);
        opts.keep_all_collisions = all_collisions;
        res = direct_search(target, prec, opts);
        res.seed = seed;
    } else {
        throw Error(ErrorKind::Input, "--method must be rand or direct");
    }

    // self-consistency: recompute the distance from the printed text itself
    const std::string printed = res.circuit.to_string();
    const double recheck = trace_distance(Circuit::parse(printed).evaluate(), target);
    json out = result_json(res);
    out["distance"] = recheck;
    out["target"] = json::parse(target.to_json());
    std::cout << out.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchSpec {
    int count = 100;
    std::vector<double> eps_list;
    std::uint64_t seed = 1;
    std::string mode = "DS";  // RA, DS, ExactRoundtrip
};

struct BenchRow {
    double eps;
    std::string method;
    double median_vc, mean_vc;
    int worst_vc;
    double mean_dist;
    int failures;
};

double median_of(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 ? (double)v[n / 2] : ((double)v[n / 2 - 1] + (double)v[n / 2]) / 2.0;
}

BenchRow bench_one(const BenchSpec& spec, double eps) {
    BenchRow row{eps, spec.mode, 0, 0, 0, 0, 0};
    std::vector<int> vcs;
    double dist_sum = 0.0;
    Rng targets(derive_seed(spec.seed, 0xbe9c4));

    for (int i = 0; i < spec.count; ++i) {
        const std::uint64_t target_seed = derive_seed(spec.seed, (std::uint64_t)i + 1);
        try {
            ApproxResult res;
            UnitVector4 g = UnitVector4::identity();
            if (spec.mode == "ExactRoundtrip") {
                Rng rng(target_seed);
                LipschitzQuaternion q{1, 0, 0, 0};
                for (int j = 0; j < 20; ++j) q = multiply(q, generator_set()[rng.next_below(14)]);
                const auto u = ExactUnitary::from_quaternion_or_throw(q);
                const Circuit c = exact_synthesize(u);
                const auto back = circuit_quaternion(c);
                if (back != q && back != -q) {
                    throw SearchExhausted("roundtrip mismatch");
                }
                vcs.push_back(c.v_count());
                continue;
            }
            g = random_unitary(targets);
            if (spec.mode == "RA") {
                res = approx_unitary(g, Precision::of(eps), target_seed, {},
                                     UnitaryBudget::PaperBudget);
            } else if (spec.mode == "DS") {
                res = direct_search(g, Precision::of(eps), direct_options_from_env(50'000'000));
            } else {
                throw Error(ErrorKind::Input, "--mode must be RA, DS or ExactRoundtrip");
            }
            const double verified = trace_distance(res.circuit.evaluate(), g);
            vcs.push_back(res.circuit.v_count());
            dist_sum += verified;
        } catch (const Error&) {
            ++row.failures;
        }
    }

    row.median_vc = median_of(vcs);
    row.worst_vc = vcs.empty() ? 0 : *std::max_element(vcs.begin(), vcs.end());
    double sum = 0;
    for (int v : vcs) sum += v;
    row.mean_vc = vcs.empty() ? 0.0 : sum / (double)vcs.size();
    row.mean_dist = vcs.empty() ? 0.0 : dist_sum / (double)vcs.size();
    return row;
}

int cmd_bench(const BenchSpec& spec, const std::string& out_path) {
    std::vector<BenchRow> rows;
    for (const double eps : spec.eps_list) rows.push_back(bench_one(spec, eps));
    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.eps > b.eps || (a.eps == b.eps && a.method < b.method);
    });

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << kReportHeader << "\n";
    *out << "eps,method,median_vc,mean_vc,worst_vc,mean_dist,failures\n";
    for (const auto& r : rows) {
        *out << r.eps << ',' << r.method << ',' << r.median_vc << ',' << r.mean_vc << ','
             << r.worst_vc << ',' << r.mean_dist << ',' << r.failures << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

int cmd_conjecture(int p, const std::vector<int>& levels, double delta, bool segment,
                   double angle, const std::string& population, const std::string& out_path) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << kReportHeader << "\n";
    *out << "p,L,Delta,grid_points,projection_points,ratio,ks_D,ks_p\n";
    for (const int L : levels) {
        const auto ring = RingSpec::make(p, L, delta);
        LatticeCounts counts;
        if (segment) {
            counts = count_segment_projections(SegmentSpec::make(ring, angle));
        } else {
            counts = count_ring_projections(ring);
        }
        const auto angles =
            population == "disk" ? disk_projection_angles(ring) : ring_projection_angles(ring);
        const auto ks = ks_uniformity(angles);
        // ratio: projection count against the conjectured p^(L/2)/L scale
        const double scale = std::pow((double)p, L / 2.0) / (double)L;
        *out << p << ',' << L << ',' << delta << ',' << counts.grid_points << ','
             << counts.projection_points << ',' << (double)counts.projection_points / scale
             << ',' << ks.d_statistic << ',' << ks.p_value << "\n";
        // diagnostic only: Landau-Ramanujan density of two-square residues at
        // this scale, and the observed fraction
        const double residue_scale = 2.0 * delta * std::pow((double)p, L / 2.0);
        const double lr_density = kLandauRamanujan / std::sqrt(std::log(residue_scale));
        *out << "# L=" << L << " two-square density: expected ~" << lr_density << ", observed "
             << (counts.grid_points
                     ? (double)counts.projection_points / (double)counts.grid_points
                     : 0.0)
             << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// ladder
// ---------------------------------------------------------------------------

int cmd_ladder(int target, std::uint64_t trials, std::optional<std::uint64_t> seed_opt,
               const std::string& policy_name, bool analytic, const std::string& out_path) {
    const std::uint64_t seed = seed_or_entropy(seed_opt, std::cout);
    const ReusePolicy policy = policy_name == "reuse" ? ReusePolicy::ReuseReturnedH0
                                                      : ReusePolicy::DiscardOnDescent;
    LadderConfig cfg;
    cfg.target_level = target;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.reuse_policy = policy;
    const auto stats = simulate_ladder(cfg);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        out = &file;
    }
    *out << kReportHeader << "\n";
    *out << "target_level,policy,trials,mean,median,stderr\n";
    *out << target << ',' << (policy == ReusePolicy::ReuseReturnedH0 ? "reuse" : "discard") << ','
         << trials << ',' << stats.mean_h0_cost << ',' << stats.median_h0_cost << ','
         << stats.stderr_mean << "\n";
    if (analytic) {
        *out << "# analytic " << analytic_ladder_cost(target, cfg.theta0, policy) << "\n";
    }
    return 0;
}

int cmd_ladder_cost(double c_h2, double success_prob, int attempts, double backoff) {
    CostModel model;
    model.c_h2 = c_h2;
    model.success_prob = success_prob;
    model.backoff_cost = backoff;
    model.max_attempts = attempts;
    const auto cost = v_gate_cost(model, attempts);
    json out{{"c_h2", c_h2},
             {"success_prob", success_prob},
             {"attempts_before_backoff", attempts},
             {"success_path_cost", cost.success_path_cost},
             {"expected_attempts", cost.expected_attempts},
             {"expected_h0", cost.expected_h0},
             {"per_attempt_resource", cost.per_attempt_resource},
             {"cumulative_cost", cost.cumulative_cost}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"V-basis single-qubit circuit synthesis"};
    app.require_subcommand(1);

    // exact-synth
    std::string quat_text;
    auto* synth = app.add_subcommand("exact-synth", "exact synthesis of a norm-5^L quaternion");
    synth->add_option("--quaternion", quat_text, "quaternion a,b,c,d")->required();

    // approx
    std::optional<double> rz;
    std::optional<std::string> target_text;
    double eps = 1e-3;
    std::string method = "rand";
    std::optional<std::uint64_t> seed;
    bool general = false;
    std::size_t max_table = 50'000'000;
    auto* approx = app.add_subcommand("approx", "approximate a rotation or unitary");
    approx->add_option("--rz", rz, "Z-rotation angle (radians)");
    approx->add_option("--target", target_text, "target unitary alpha,beta,gamma,delta");
    approx->add_option("--eps", eps, "target precision (trace distance)");
    approx->add_option("--method", method, "rand | direct");
    approx->add_option("--seed", seed, "PRNG seed (default: entropy, printed)");
    approx->add_flag("--general", general, "full two-squares completion (rand method)");
    approx->add_option("--max-table-entries", max_table, "residue table cap (direct method)");
    bool all_collisions = false;
    approx->add_flag("--all-collisions", all_collisions,
                     "retain every (b,c) per residue (direct method)");

    // bench
    BenchSpec bench;
    std::string eps_csv = "1e-3";
    std::string bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "batch benchmark over random targets");
    bench_cmd->add_option("--count", bench.count, "number of random targets");
    bench_cmd->add_option("--eps", eps_csv, "comma-separated precision list");
    bench_cmd->add_option("--seed", bench.seed, "PRNG seed");
    bench_cmd->add_option("--mode", bench.mode, "RA | DS | ExactRoundtrip");
    bench_cmd->add_option("--out", bench_out, "write CSV here instead of stdout");

    // conjecture
    int conj_p = 5;
    std::vector<int> conj_levels{8};
    double conj_delta = 4.0;
    bool conj_segment = false;
    double conj_angle = 0.0;
    std::string conj_population = "ring";
    std::string conj_out;
    auto* conj = app.add_subcommand("conjecture", "ring/segment lattice density reports");
    conj->add_option("--p", conj_p, "prime = 1 mod 4");
    conj->add_option("--L", conj_levels, "levels to scan");
    conj->add_option("--delta", conj_delta, "ring width");
    conj->add_flag("--segment", conj_segment, "count the tangent segment instead of the ring");
    conj->add_option("--angle", conj_angle, "tangent angle for --segment");
    conj->add_option("--population", conj_population, "ring | disk (KS angle population)");
    conj->add_option("--out", conj_out, "write CSV here instead of stdout");

    // ladder
    int ladder_target = 2;
    std::uint64_t ladder_trials = 1'000'000;
    std::optional<std::uint64_t> ladder_seed;
    std::string ladder_policy = "discard";
    bool ladder_analytic = false;
    std::string ladder_out;
    auto* ladder = app.add_subcommand("ladder", "resource-state ladder simulation");
    ladder->add_option("--target", ladder_target, "target ladder level");
    ladder->add_option("--trials", ladder_trials, "Monte Carlo trials");
    ladder->add_option("--seed", ladder_seed, "PRNG seed");
    ladder->add_option("--policy", ladder_policy, "discard | reuse");
    ladder->add_flag("--analytic", ladder_analytic, "append the analytic oracle");
    ladder->add_option("--out", ladder_out, "write CSV here instead of stdout");

    // ladder cost
    double cost_ch2 = 4.35, cost_p = 0.5, cost_backoff = 0.0;
    int cost_attempts = 3;
    auto* cost = ladder->add_subcommand("cost", "expected gate cost calculator");
    cost->add_option("--c-h2", cost_ch2, "resource-state cost");
    cost->add_option("--success-prob", cost_p, "per-attempt success probability");
    cost->add_option("--attempts", cost_attempts, "attempts before backoff");
    cost->add_option("--backoff-cost", cost_backoff, "user-supplied backoff constant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return cmd_exact_synth(quat_text);
        if (*approx) {
            return cmd_approx(rz, target_text, eps, method, seed, general, max_table,
                              all_collisions);
        }
        if (*bench_cmd) {
            bench.eps_list.clear();
            std::stringstream ss(eps_csv);
            std::string piece;
            while (std::getline(ss, piece, ',')) bench.eps_list.push_back(std::stod(piece));
            return cmd_bench(bench, bench_out);
        }
        if (*conj) {
            return cmd_conjecture(conj_p, conj_levels, conj_delta, conj_segment, conj_angle,
                                  conj_population, conj_out);
        }
        if (*ladder) {
            if (*cost) return cmd_ladder_cost(cost_ch2, cost_p, cost_attempts, cost_backoff);
            return cmd_ladder(ladder_target, ladder_trials, ladder_seed, ladder_policy,
                              ladder_analytic, ladder_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
