#include "doctest.h"
#include "vfive/errors.hpp"
#include "vfive/exact_synth.hpp"
#include "vfive/numtheory.hpp"
#include "vfive/prng.hpp"

using namespace vfive;

namespace {

LipschitzQuaternion random_generator_product(Rng& rng, int length, int* level_out) {
    LipschitzQuaternion q{1, 0, 0, 0};
    int level = 0;
    for (int i = 0; i < length; ++i) {
        const auto& g = generator_set()[rng.next_below(14)];
        if (norm(g) == 5) ++level;
        q = multiply(q, g);
    }
    if (level_out) *level_out = level;
    return q;
}

}  // namespace

TEST_CASE("representability levels") {
    CHECK(is_exactly_representable({3, 4, 0, 0}) == 2);
    CHECK(!is_exactly_representable({3, 1, 0, 0}).has_value());  // norm 10
    CHECK(is_exactly_representable({1, 0, 0, 0}) == 0);
    CHECK(is_exactly_representable({0, -1, 0, 0}) == 0);
    CHECK(!is_exactly_representable({0, 0, 0, 0}).has_value());

    CHECK(!ExactUnitary::from_quaternion({1, 1, 0, 0}).has_value());
    CHECK_THROWS_AS(ExactUnitary::from_quaternion_or_throw({1, 1, 0, 0}), NotRepresentableError);
}

TEST_CASE("generator-to-token table") {
    CHECK(gate_of_generator({1, 2, 0, 0}) == GateToken::V1);
    CHECK(gate_of_generator({1, 0, 0, -2}) == GateToken::V3d);
    CHECK(gate_of_generator({0, 1, 0, 0}) == GateToken::X);
    CHECK(gate_of_generator({0, -1, 0, 0}) == GateToken::X);
    CHECK(gate_of_generator({-1, 0, 0, 0}) == GateToken::I);
    CHECK_THROWS_AS(gate_of_generator({1, 2, 2, 4}), NotRepresentableError);
}

TEST_CASE("synthesis examples") {
    const auto id = ExactUnitary::from_quaternion_or_throw({1, 0, 0, 0});
    CHECK(exact_synthesize(id).empty());

    const auto v1 = ExactUnitary::from_quaternion_or_throw({1, 2, 0, 0});
    CHECK(exact_synthesize(v1).to_string() == "V1");

    const auto v12 = ExactUnitary::from_quaternion_or_throw({1, 2, 2, 4});
    CHECK(exact_synthesize(v12).to_string() == "V1 V2");
}

TEST_CASE("content reduction") {
    const auto u = ExactUnitary::from_quaternion_or_throw({5, 0, 0, 0});
    CHECK(u.level() == 2);
    CHECK(u.reduced().level() == 0);
    CHECK(exact_synthesize(u.reduced()).empty());
    // unreduced input still synthesizes to its own exact product
    const auto c = exact_synthesize(u);
    CHECK(c.v_count() == 2);
    CHECK(circuit_quaternion(c) == LipschitzQuaternion{5, 0, 0, 0});
}

TEST_CASE("roundtrip: synthesize then evaluate equals the input up to sign") {
    Rng rng(3);
    for (int rep = 0; rep < 1000; ++rep) {
        int level = 0;
        const auto q = random_generator_product(rng, (int)rng.next_below(21), &level);
        const auto u = ExactUnitary::from_quaternion_or_throw(q);
        CHECK(u.level() == level);
        const Circuit c = exact_synthesize(u);
        CHECK(c.v_count() <= level);
        const auto back = circuit_quaternion(c);
        CHECK((back == q || back == -q));
    }
}

TEST_CASE("divisor existence: exhaustive to level 3, random to level 30") {
    for (int l = 1; l <= 3; ++l) {
        std::int64_t n = 1;
        for (int i = 0; i < l; ++i) n *= 5;
        for (const auto& t : enumerate_s4(n)) {
            const LipschitzQuaternion q{t.x, t.y, t.z, t.w};
            bool divisible = false;
            for (const auto& g : norm5_generators()) {
                if (try_right_divide(q, g)) {
                    divisible = true;
                    break;
                }
            }
            CHECK(divisible);
        }
    }

    Rng rng(91);
    for (int rep = 0; rep < 200; ++rep) {
        LipschitzQuaternion q{1, 0, 0, 0};
        const int l = 1 + (int)rng.next_below(30);
        for (int i = 0; i < l; ++i) {
            q = multiply(q, norm5_generators()[rng.next_below(6)]);
        }
        bool divisible = false;
        for (const auto& g : norm5_generators()) {
            if (try_right_divide(q, g)) {
                divisible = true;
                break;
            }
        }
        CHECK(divisible);
    }
}
