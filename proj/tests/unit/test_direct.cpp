#include <cmath>

#include "doctest.h"
#include "vfive/direct_search.hpp"
#include "vfive/errors.hpp"
#include "vfive/exact_synth.hpp"
#include "vfive/sampling.hpp"

using namespace vfive;

namespace {

LipschitzQuaternion planted_product(Rng& rng, int level) {
    LipschitzQuaternion q{1, 0, 0, 0};
    for (int i = 0; i < level; ++i) q = multiply(q, norm5_generators()[rng.next_below(6)]);
    return q;
}

}  // namespace

TEST_CASE("starting level") {
    CHECK(starting_level(Precision::of(1e-3)) == 13);
    CHECK(starting_level(Precision::of(std::pow(5.0, -4.0))) == 12);
    CHECK(starting_level(Precision::of(1e-7)) == 31);
    for (double eps : {0.05, 1e-2, 1e-4, 1e-5, 1e-6}) {
        const int L = starting_level(Precision::of(eps));
        CHECK(std::pow(5.0, -L / 3.0) <= eps);
        if (L > 1) CHECK(std::pow(5.0, -(L - 1) / 3.0) > eps);
    }
}

TEST_CASE("escalation schedule shape") {
    const auto plans = escalation_schedule(Precision::of(1e-3));
    REQUIRE(plans.size() >= 4);
    CHECK(plans[0].L == 13);
    CHECK(plans[0].tau == doctest::Approx(1e-3));
    CHECK(plans[1].L == 13);
    CHECK(plans[1].tau == doctest::Approx(3e-3));
    CHECK(plans[2].L == 14);
    for (const auto& p : plans) {
        CHECK(p.tau >= 1e-3);
        CHECK(p.L <= p.max_L);
    }
    CHECK(plans.back().max_L == 21);  // ceil(4 log5(2000)) + 2
}

TEST_CASE("on-grid target returns its own circuit") {
    const auto v1 = UnitVector4::normalized(1, 2, 0, 0);
    const auto res = direct_search(v1, Precision::of(1e-3));
    CHECK(res.circuit.to_string() == "V1");
    CHECK(res.achieved_distance < 1e-7);  // representation noise under the sqrt
    CHECK(res.level == 1);
}

TEST_CASE("random targets: verified distance, determinism") {
    Rng rng(5);
    for (int i = 0; i < 8; ++i) {
        const auto g = random_unitary(rng);
        const auto res = direct_search(g, Precision::of(1e-3));
        CHECK(res.achieved_distance <= 1e-3);
        CHECK(res.circuit.v_count() <= res.level);
        CHECK(trace_distance(res.circuit.evaluate(), g) <= 1e-3 + 1e-12);

        const auto res2 = direct_search(g, Precision::of(1e-3));
        CHECK(res.circuit == res2.circuit);
    }
}

TEST_CASE("planted grid points are found by the sweep itself") {
    Rng rng(29);
    DirectOptions opts;
    opts.enable_grid_snap = false;
    for (int rep = 0; rep < 6; ++rep) {
        const int level = 10;
        const auto q = planted_product(rng, level);
        const auto g = to_unit_vector(q);
        const double eps = 1.01 * std::pow(5.0, -level / 3.0);
        REQUIRE(starting_level(Precision::of(eps)) == level);
        const auto res = direct_search(g, Precision::of(eps), opts);
        CHECK(res.achieved_distance <= eps);
        CHECK(res.level <= level);
    }
}

TEST_CASE("128-bit level path: planted point at level 28") {
    // levels above 26 leave the int64/kernel domain; plant a point there and
    // run that pass directly (snap off, no start offset)
    Rng rng(31);
    const int level = 28;
    const auto q = planted_product(rng, level);
    const auto g = to_unit_vector(q);
    const double eps = 1.01 * std::pow(5.0, -level / 3.0);
    REQUIRE(starting_level(Precision::of(eps)) == level);
    DirectOptions opts;
    opts.enable_grid_snap = false;
    opts.start_offset = 0;
    const auto res = direct_search(g, Precision::of(eps), opts);
    CHECK(res.level == level);
    CHECK(res.achieved_distance < 1e-7);
    CHECK(res.circuit.v_count() <= level);
}

TEST_CASE("exact distance comparator agrees with the closed form") {
    // far case: identity vs V1 at distance sqrt(1 - 1/sqrt(5))
    const LipschitzQuaternion v1{1, 2, 0, 0};
    const auto id = UnitVector4::identity();
    CHECK(!distance_below_exact(v1, 1, id, 0.74));
    CHECK(distance_below_exact(v1, 1, id, 0.75));

    // (1/2,1/2,1/2,1/2) is exactly dyadic and exactly unit, so the verdict
    // must flip one double-ulp around the frozen reference distance
    const auto half = UnitVector4::from_components(0.5, 0.5, 0.5, 0.5);
    const double d_v1 = 0.5737417596358688366562827806560291677;  // sqrt(1 - 1.5/sqrt(5))
    CHECK(distance_below_exact(v1, 1, half, d_v1 * (1 + 1e-15)));
    CHECK(!distance_below_exact(v1, 1, half, d_v1 * (1 - 1e-15)));

    const LipschitzQuaternion v12{1, 2, 2, 4};  // dot = 4.5/5, dist = sqrt(0.1)
    const double d_v12 = 0.3162277660168379331998893544432718534;
    CHECK(distance_below_exact(v12, 2, half, d_v12 * (1 + 1e-15)));
    CHECK(!distance_below_exact(v12, 2, half, d_v12 * (1 - 1e-15)));

    // a double-rounded target sits a few 1e-9 from its exact grid point (the
    // sqrt floor); the comparator resolves that where doubles cannot
    CHECK(distance_below_exact(v1, 1, to_unit_vector(v1), 1e-7));
    CHECK(!distance_below_exact(v1, 1, to_unit_vector(v1), 1e-12));
}

TEST_CASE("filter does not change the result") {
    Rng rng(41);
    for (int i = 0; i < 5; ++i) {
        const auto g = random_unitary(rng);
        DirectOptions with, without;
        without.use_filter = false;
        const auto a = direct_search(g, Precision::of(3e-3), with);
        const auto b = direct_search(g, Precision::of(3e-3), without);
        CHECK(a.circuit == b.circuit);
        CHECK(a.level == b.level);
    }
}

TEST_CASE("collision retention mode agrees on the verified outcome") {
    Rng rng(53);
    const auto g = random_unitary(rng);
    DirectOptions all;
    all.keep_all_collisions = true;
    const auto a = direct_search(g, Precision::of(1e-3));
    const auto b = direct_search(g, Precision::of(1e-3), all);
    CHECK(a.achieved_distance <= 1e-3);
    CHECK(b.achieved_distance <= 1e-3);
    CHECK(a.level == b.level);
}

TEST_CASE("table cap raises a budget error") {
    Rng rng(67);
    const auto g = random_unitary(rng);
    DirectOptions opts;
    opts.max_table_entries = 10;
    opts.enable_grid_snap = false;
    CHECK_THROWS_AS(direct_search(g, Precision::of(1e-4), opts), TableCapExceeded);
}

TEST_CASE("epsilon domain") {
    const auto g = UnitVector4::identity();
    CHECK_THROWS_AS(direct_search(g, Precision::of(0.2)), EpsilonTooLarge);
}

TEST_CASE("residue table: first wins and all-collisions ordering") {
    ResidueTable t(16, 1000, false);
    t.insert(42, 1, 2);
    t.insert(42, 3, 4);  // ignored: first pair wins
    int calls = 0;
    t.for_each_match(42, [&](std::int32_t b, std::int32_t c) {
        CHECK(b == 1);
        CHECK(c == 2);
        ++calls;
        return false;
    });
    CHECK(calls == 1);
    CHECK(t.size() == 1);
    CHECK(!t.for_each_match(7, [&](std::int32_t, std::int32_t) { return true; }));

    ResidueTable keep(16, 1000, true);
    keep.insert(42, 1, 2);
    keep.insert(42, 3, 4);
    std::vector<int> seen;
    keep.for_each_match(42, [&](std::int32_t b, std::int32_t) {
        seen.push_back(b);
        return false;
    });
    CHECK(seen == std::vector<int>{1, 3});

    ResidueTable capped(16, 2, false);
    capped.insert(1, 0, 0);
    capped.insert(2, 0, 0);
    CHECK_THROWS_AS(capped.insert(3, 0, 0), TableCapExceeded);
}

TEST_CASE("residue table survives growth") {
    ResidueTable t(4, 100000, false);
    for (std::uint64_t k = 0; k < 5000; ++k) t.insert(k * 7919, (std::int32_t)k, 1);
    CHECK(t.size() == 5000);
    for (std::uint64_t k = 0; k < 5000; ++k) {
        bool hit = t.for_each_match(k * 7919, [&](std::int32_t b, std::int32_t) {
            return b == (std::int32_t)k;
        });
        CHECK(hit);
    }
}
