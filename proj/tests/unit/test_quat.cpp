#include "doctest.h"
#include "vfive/prng.hpp"
#include "vfive/quaternion.hpp"

using namespace vfive;

namespace {

LipschitzQuaternion random_quat(Rng& rng, int bits) {
    auto draw = [&] {
        bigint v = 0;
        for (int b = 0; b < bits; b += 64) {
            v <<= 64;
            v |= rng.next_u64();
        }
        return (rng.next_u64() & 1) ? v : -v;
    };
    return {draw(), draw(), draw(), draw()};
}

}  // namespace

TEST_CASE("hamilton product examples") {
    const LipschitzQuaternion one{1, 0, 0, 0};
    const LipschitzQuaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    CHECK(multiply(i, j) == k);
    CHECK(multiply(j, i) == -k);

    const LipschitzQuaternion v1{1, 2, 0, 0}, v2{1, 0, 2, 0};
    CHECK(multiply(v1, v2) == LipschitzQuaternion{1, 2, 2, 4});
    CHECK(multiply(v1, one) == v1);
}

TEST_CASE("conjugate and norm") {
    const LipschitzQuaternion v1{1, 2, 0, 0};
    CHECK(conjugate(v1) == LipschitzQuaternion{1, -2, 0, 0});
    CHECK(norm(v1) == 5);
    CHECK(norm(multiply(v1, {1, 0, 2, 0})) == 25);
}

TEST_CASE("norm multiplicativity and q * conj(q), random big integers") {
    Rng rng(23);
    for (int rep = 0; rep < 300; ++rep) {
        const auto p = random_quat(rng, 96);
        const auto q = random_quat(rng, 96);
        CHECK(norm(multiply(p, q)) == norm(p) * norm(q));
        const auto qc = multiply(q, conjugate(q));
        CHECK(qc == LipschitzQuaternion{norm(q), 0, 0, 0});
    }
}

TEST_CASE("right division examples") {
    // (1+2i+2j+4k) * conj(1+2j) = 5 + 10i, so division is exact
    const auto r = try_right_divide({1, 2, 2, 4}, {1, 0, 2, 0});
    REQUIRE(r.has_value());
    CHECK(*r == LipschitzQuaternion{1, 2, 0, 0});
    CHECK(multiply(*r, {1, 0, 2, 0}) == LipschitzQuaternion{1, 2, 2, 4});

    const auto self = try_right_divide({1, 2, 0, 0}, {1, 2, 0, 0});
    REQUIRE(self.has_value());
    CHECK(*self == LipschitzQuaternion{1, 0, 0, 0});

    // (1+2i) * conj(1+2j) = (1, 2, -2, -4): no component divisible by 5
    CHECK(!try_right_divide({1, 2, 0, 0}, {1, 0, 2, 0}).has_value());
}

TEST_CASE("generator set layout") {
    const auto& gens = generator_set();
    CHECK(gens.size() == 14);
    for (int i = 0; i < 8; ++i) CHECK(norm(gens[(std::size_t)i]) == 1);
    for (int i = 8; i < 14; ++i) CHECK(norm(gens[(std::size_t)i]) == 5);
    CHECK(gens[0] == LipschitzQuaternion{1, 0, 0, 0});
    CHECK(gens[8] == LipschitzQuaternion{1, 2, 0, 0});
    CHECK(norm5_generators()[5] == LipschitzQuaternion{1, 0, 0, -2});
}

TEST_CASE("every norm-5 quaternion is unit times a norm-5 generator") {
    // exhaustive base case: components in [-2, 2]
    int found = 0;
    for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
            for (int c = -2; c <= 2; ++c) {
                for (int d = -2; d <= 2; ++d) {
                    const LipschitzQuaternion q{a, b, c, d};
                    if (norm(q) != 5) continue;
                    ++found;
                    bool matched = false;
                    for (int u = 0; u < 8 && !matched; ++u) {
                        const auto prod = multiply(generator_set()[(std::size_t)u], q);
                        for (const auto& g : norm5_generators()) {
                            if (prod == g || prod == -g) {
                                matched = true;
                                break;
                            }
                        }
                    }
                    CHECK(matched);
                }
            }
        }
    }
    CHECK(found == 48);  // r4(5)
}

TEST_CASE("quaternion text form") {
    const LipschitzQuaternion q{-1, 2, 0, 123456789123456789LL};
    CHECK(to_string(q) == "-1,2,0,123456789123456789");
    const auto back = parse_quaternion("-1,+2, 0 ,123456789123456789");
    REQUIRE(back.has_value());
    CHECK(*back == q);
    CHECK(!parse_quaternion("1,2,3").has_value());
    CHECK(!parse_quaternion("1,2,x,4").has_value());
    CHECK(!parse_quaternion("1,2,3,4,5").has_value());

    const auto big = parse_quaternion("123456789012345678901234567890,0,0,1");
    REQUIRE(big.has_value());
    CHECK(big->a == bigint("123456789012345678901234567890"));
}
