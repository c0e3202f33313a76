#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vfive/int128.hpp"

namespace vfive {

/// Pair (x, y) with x^2 + y^2 = n; order and signs unconstrained.
struct TwoSquares {
    bigint x, y;
};

enum class TwoSquaresStatus { Found, NotRepresentable, FactorizationTimeout };

struct TwoSquaresResult {
    TwoSquaresStatus status = TwoSquaresStatus::NotRepresentable;
    TwoSquares value;

    bool found() const { return status == TwoSquaresStatus::Found; }
};

/// Miller-Rabin with `rounds` random bases drawn from `seed`; error
/// probability <= 4^-rounds, deterministic for a fixed seed.
bool is_probable_prime(const bigint& n, int rounds = 25, std::uint64_t seed = 0x5eedu);

struct FactorOptions {
    std::uint32_t trial_bound = 100000;   // trial division limit
    std::uint64_t rho_iterations = 2000000;  // Brent-rho budget per composite
    std::uint64_t seed = 0x5eedu;
};

struct Factorization {
    std::vector<std::pair<bigint, int>> factors;  // (prime, exponent), ascending
    bool complete = true;  // false if a cofactor resisted the budget
};

Factorization factorize(bigint n, const FactorOptions& opts = {});

/// Writes n as x^2 + y^2 when possible. Prime inputs take the sqrt(-1)
/// descent shortcut; composites are factored (desk scale) and recombined via
/// Gaussian multiplication.
TwoSquaresResult two_squares_decompose(const bigint& n, const FactorOptions& opts = {});

/// Exact sum-of-two-squares membership (full factorization; throws
/// BudgetExceeded if the factor budget runs out).
bool is_sum_two_squares(const bigint& n, const FactorOptions& opts = {});

enum class Filter3 { Yes, No, Unknown };

/// Cheap necessary-condition filter. No only on a certificate (odd power of
/// a prime = 3 mod 4 within the trial bound, or residue 3 mod 4 left over);
/// Yes only on a complete factorization; Unknown otherwise. Callers treat
/// Unknown as Yes.
Filter3 is_sum_two_squares_filter(const bigint& n, std::uint32_t trial_bound);

/// Fast-path overloads for the search inner loops.
Filter3 is_sum_two_squares_filter_u64(std::uint64_t n, std::uint32_t trial_bound);
Filter3 is_sum_two_squares_filter_u128(uint128 n, std::uint32_t trial_bound);

/// Number of ordered signed 4-tuples with x^2+y^2+z^2+w^2 = n (Jacobi's
/// divisor sum). Throws on overflow or incomplete factorization.
std::int64_t r4_count(std::int64_t n);

/// Streams every ordered signed tuple (x, y, z, w) with x^2+y^2+z^2+w^2 = N.
void for_each_s4(std::int64_t N, const std::function<void(std::int64_t, std::int64_t,
                                                          std::int64_t, std::int64_t)>& fn);

struct S4Tuple {
    std::int64_t x, y, z, w;
};

/// Materialized enumeration; throws CapExceeded when N exceeds `cap`
/// (default 5^9).
std::vector<S4Tuple> enumerate_s4(std::int64_t N, std::int64_t cap = 1953125);

/// Landau-Ramanujan constant, used only for diagnostic density estimates.
inline constexpr double kLandauRamanujan = 0.7642236535;

}  // namespace vfive
