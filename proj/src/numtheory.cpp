#include "vfive/numtheory.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "vfive/errors.hpp"
#include "vfive/prng.hpp"

namespace vfive {

using boost::multiprecision::powm;
using boost::multiprecision::sqrt;

// ---------------------------------------------------------------------------
// Small-prime sieve with precomputed odd-modulus divisibility constants
// (n % p == 0  <=>  n * inv_p (mod 2^64) <= (2^64 - 1) / p).
// ---------------------------------------------------------------------------

namespace {

struct SievedPrime {
    std::uint32_t p;
    std::uint64_t inv;        // modular inverse of p mod 2^64 (odd p)
    std::uint64_t threshold;  // (2^64 - 1) / p
};

constexpr std::uint32_t kSieveLimit = 1u << 20;

std::uint64_t mul_inverse_pow2_64(std::uint64_t p) {
    std::uint64_t inv = p;  // 3 bits correct
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    return inv;
}

const std::vector<SievedPrime>& sieved_primes() {
    static const std::vector<SievedPrime> primes = [] {
        std::vector<bool> composite(kSieveLimit, false);
        std::vector<SievedPrime> out;
        for (std::uint64_t i = 2; i < kSieveLimit; ++i) {
            if (composite[i]) continue;
            for (std::uint64_t j = i * i; j < kSieveLimit; j += i) composite[j] = true;
            SievedPrime sp;
            sp.p = (std::uint32_t)i;
            sp.inv = (i & 1) ? mul_inverse_pow2_64(i) : 0;
            sp.threshold = ~0ull / i;
            out.push_back(sp);
        }
        return out;
    }();
    return primes;
}

inline bool divisible_odd(std::uint64_t n, const SievedPrime& sp) {
    return n * sp.inv <= sp.threshold;
}

bigint random_bigint_below(Rng& rng, const bigint& bound) {
    const std::size_t bits = msb(bound) + 65;
    bigint acc = 0;
    for (std::size_t produced = 0; produced < bits; produced += 64) {
        acc <<= 64;
        acc |= rng.next_u64();
    }
    return acc % bound;
}

}  // namespace

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

bool is_probable_prime(const bigint& n, int rounds, std::uint64_t seed) {
    if (n < 2) return false;
    static constexpr int kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (int p : kSmall) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }

    bigint d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    Rng rng(derive_seed(seed, (std::uint64_t)(n % bigint(0xffffffffffffffffull))
                                  .convert_to<std::uint64_t>()));
    const bigint n1 = n - 1;
    for (int round = 0; round < rounds; ++round) {
        // base 2 first: cheap and rejects almost all composites immediately
        bigint a = (round == 0) ? bigint(2) : bigint(2) + random_bigint_below(rng, n - 3);
        bigint x = powm(a, d, n);
        if (x == 1 || x == n1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = (x * x) % n;
            if (x == n1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization: trial division plus Brent-rho with a budget
// ---------------------------------------------------------------------------

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (std::uint64_t)(((uint128)a * b) % m);
}

// Brent's cycle variant of Pollard rho; 0 if the budget ran out.
std::uint64_t rho_u64(std::uint64_t n, Rng& rng, std::uint64_t& budget) {
    if ((n & 1) == 0) return 2;
    while (budget > 0) {
        const std::uint64_t c = 1 + rng.next_below(n - 1);
        std::uint64_t y = 1 + rng.next_below(n - 1);
        std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        const std::uint64_t block = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const std::uint64_t steps = std::min(block, r - k);
                for (std::uint64_t i = 0; i < steps && budget > 0; ++i, --budget) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += block;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

bigint rho_big(const bigint& n, Rng& rng, std::uint64_t& budget) {
    if ((n & 1) == 0) return 2;
    while (budget > 0) {
        const bigint c = 1 + random_bigint_below(rng, n - 1);
        bigint y = 1 + random_bigint_below(rng, n - 1);
        bigint g = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        const std::uint64_t block = 64;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const std::uint64_t steps = std::min(block, r - k);
                for (std::uint64_t i = 0; i < steps && budget > 0; ++i, --budget) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += block;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

}  // namespace

Factorization factorize(bigint n, const FactorOptions& opts) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    if (n == 1) return out;

    const std::uint32_t bound = std::min(opts.trial_bound, kSieveLimit - 1);
    for (const auto& sp : sieved_primes()) {
        if (sp.p > bound) break;
        if (bigint(sp.p) * sp.p > n) break;
        if (n % sp.p == 0) {
            int e = 0;
            do {
                n /= sp.p;
                ++e;
            } while (n % sp.p == 0);
            out.factors.emplace_back(sp.p, e);
        }
    }
    if (n == 1) return out;

    // crack the remaining cofactor(s)
    Rng rng(derive_seed(opts.seed, 0xfac70));
    std::uint64_t budget = opts.rho_iterations;
    std::vector<bigint> pending{n};
    std::vector<bigint> primes;
    while (!pending.empty()) {
        bigint m = pending.back();
        pending.pop_back();
        if (m == 1) continue;
        if (is_probable_prime(m, 25, opts.seed)) {
            primes.push_back(m);
            continue;
        }
        bigint d;
        if (m <= bigint(~0ull)) {
            std::uint64_t d64 = rho_u64(m.convert_to<std::uint64_t>(), rng, budget);
            d = d64;
        } else {
            d = rho_big(m, rng, budget);
        }
        if (d == 0) {
            // budget exhausted: report the composite leftover as-is
            out.factors.emplace_back(m, 1);
            out.complete = false;
            continue;
        }
        pending.push_back(d);
        pending.push_back(m / d);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], (int)(j - i));
        i = j;
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

// ---------------------------------------------------------------------------
// Sums of two squares
// ---------------------------------------------------------------------------

namespace {

// sqrt(-1) mod p for prime p = 1 mod 4: a quadratic non-residue g gives
// g^((p-1)/4); about half of random g work.
bigint sqrt_minus_one(const bigint& p, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x5017));
    const bigint e = (p - 1) / 4;
    for (int tries = 0; tries < 256; ++tries) {
        const bigint g = 2 + random_bigint_below(rng, p - 3);
        const bigint x = powm(g, e, p);
        if ((x * x) % p == p - 1) return x;
    }
    throw std::logic_error("sqrt_minus_one: no witness found (input not a prime = 1 mod 4?)");
}

// Hermite-Serret descent: Euclid on (p, x) down to the first remainder below
// sqrt(p); that remainder and the next are the two squares.
TwoSquares two_squares_of_prime(const bigint& p, std::uint64_t seed) {
    if (p == 2) return {1, 1};
    const bigint x = sqrt_minus_one(p, seed);
    const bigint stop = sqrt(p);
    bigint r0 = p, r1 = x;
    while (r1 > stop) {
        bigint r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    const bigint y2 = p - r1 * r1;
    const bigint y = sqrt(y2);
    if (y * y != y2) throw std::logic_error("two_squares_of_prime: descent failed");
    return {r1, y};
}

}  // namespace

TwoSquaresResult two_squares_decompose(const bigint& n, const FactorOptions& opts) {
    if (n < 0) throw std::invalid_argument("two_squares_decompose: n must be >= 0");
    TwoSquaresResult res;
    if (n <= 1) {
        res.status = TwoSquaresStatus::Found;
        res.value = {n, 0};
        return res;
    }

    if (is_probable_prime(n, 25, opts.seed)) {
        if (n == 2 || n % 4 == 1) {
            res.status = TwoSquaresStatus::Found;
            res.value = two_squares_of_prime(n, opts.seed);
            return res;
        }
        res.status = TwoSquaresStatus::NotRepresentable;
        return res;
    }

    const Factorization fac = factorize(n, opts);
    if (!fac.complete) {
        res.status = TwoSquaresStatus::FactorizationTimeout;
        return res;
    }
    for (const auto& [p, e] : fac.factors) {
        if (p % 4 == 3 && (e & 1)) {
            res.status = TwoSquaresStatus::NotRepresentable;
            return res;
        }
    }

    // Gaussian recombination: (x^2+y^2)(u^2+v^2) = (xu-yv)^2 + (xv+yu)^2.
    bigint x = 1, y = 0, scale = 1;
    for (const auto& [p, e] : fac.factors) {
        if (p % 4 == 3) {
            for (int i = 0; i < e / 2; ++i) scale *= p;
            continue;
        }
        const TwoSquares pq = two_squares_of_prime(p, opts.seed);
        for (int i = 0; i < e; ++i) {
            const bigint nx = x * pq.x - y * pq.y;
            const bigint ny = x * pq.y + y * pq.x;
            x = nx;
            y = ny;
        }
    }
    x = abs(x) * scale;
    y = abs(y) * scale;
    if (x * x + y * y != n) throw std::logic_error("two_squares_decompose: identity check failed");
    res.status = TwoSquaresStatus::Found;
    res.value = {x, y};
    return res;
}

bool is_sum_two_squares(const bigint& n, const FactorOptions& opts) {
    if (n < 0) throw std::invalid_argument("is_sum_two_squares: n must be >= 0");
    if (n <= 1) return true;
    if (is_probable_prime(n, 25, opts.seed)) return n == 2 || n % 4 == 1;
    const Factorization fac = factorize(n, opts);
    if (!fac.complete) throw BudgetExceeded("is_sum_two_squares: factorization budget exhausted");
    for (const auto& [p, e] : fac.factors) {
        if (p % 4 == 3 && (e & 1)) return false;
    }
    return true;
}

Filter3 is_sum_two_squares_filter_u64(std::uint64_t n, std::uint32_t trial_bound) {
    if (n <= 1) return Filter3::Yes;
    while ((n & 3) == 0) n >>= 2;
    if ((n & 3) == 3) return Filter3::No;
    std::uint64_t m = n;
    if ((m & 1) == 0) m >>= 1;  // at most one factor of 2 remains

    const auto& primes = sieved_primes();
    bool leftover_is_prime = false;  // true once no factor <= sqrt(m) remains
    for (std::size_t i = 1; i < primes.size(); ++i) {  // skip 2
        const auto& sp = primes[i];
        if (sp.p > trial_bound) break;
        if ((std::uint64_t)sp.p * sp.p > m) {
            leftover_is_prime = true;
            break;
        }
        if (divisible_odd(m, sp)) {
            int e = 0;
            do {
                m /= sp.p;
                ++e;
            } while (divisible_odd(m, sp));
            if ((sp.p & 3) == 3 && (e & 1)) return Filter3::No;
        }
    }
    if (m == 1) return Filter3::Yes;
    if ((m & 3) == 3) return Filter3::No;  // some prime = 3 mod 4 to odd power remains
    if (leftover_is_prime) return Filter3::Yes;  // prime = 1 mod 4
    return Filter3::Unknown;
}

Filter3 is_sum_two_squares_filter_u128(uint128 n, std::uint32_t trial_bound) {
    if (n <= ~0ull) return is_sum_two_squares_filter_u64((std::uint64_t)n, trial_bound);
    while ((n & 3) == 0) n >>= 2;
    if ((n & 3) == 3) return Filter3::No;
    uint128 m = n;
    if ((m & 1) == 0) m >>= 1;

    const auto& primes = sieved_primes();
    bool leftover_is_prime = false;
    for (std::size_t i = 1; i < primes.size(); ++i) {
        const auto& sp = primes[i];
        if (sp.p > trial_bound) break;
        if ((uint128)sp.p * sp.p > m) {
            leftover_is_prime = true;
            break;
        }
        if (m % sp.p == 0) {
            int e = 0;
            do {
                m /= sp.p;
                ++e;
            } while (m % sp.p == 0);
            if ((sp.p & 3) == 3 && (e & 1)) return Filter3::No;
            if (m <= ~0ull) {
                // fall through to the 64-bit path for residual powers
                const auto rest = is_sum_two_squares_filter_u64((std::uint64_t)m, trial_bound);
                return rest;
            }
        }
    }
    if (m == 1) return Filter3::Yes;
    if ((m & 3) == 3) return Filter3::No;
    if (leftover_is_prime) return Filter3::Yes;
    return Filter3::Unknown;
}

Filter3 is_sum_two_squares_filter(const bigint& n, std::uint32_t trial_bound) {
    if (n < 0) throw std::invalid_argument("is_sum_two_squares_filter: n must be >= 0");
    if (n <= bigint(~0ull)) return is_sum_two_squares_filter_u64(n.convert_to<std::uint64_t>(),
                                                                trial_bound);
    bigint m = n;
    while (m % 4 == 0) m >>= 2;
    if (m % 4 == 3) return Filter3::No;
    if (m % 2 == 0) m >>= 1;
    bool leftover_is_prime = false;
    for (const auto& sp : sieved_primes()) {
        if (sp.p == 2) continue;
        if (sp.p > trial_bound) break;
        if (bigint(sp.p) * sp.p > m) {
            leftover_is_prime = true;
            break;
        }
        if (m % sp.p == 0) {
            int e = 0;
            do {
                m /= sp.p;
                ++e;
            } while (m % sp.p == 0);
            if (sp.p % 4 == 3 && (e & 1)) return Filter3::No;
        }
    }
    if (m == 1) return Filter3::Yes;
    if (m % 4 == 3) return Filter3::No;
    if (leftover_is_prime) return Filter3::Yes;
    return Filter3::Unknown;
}

// ---------------------------------------------------------------------------
// Four squares
// ---------------------------------------------------------------------------

std::int64_t r4_count(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("r4_count: n must be >= 1");
    int twos = 0;
    std::int64_t m = n;
    while ((m & 1) == 0) {
        m >>= 1;
        ++twos;
    }
    FactorOptions opts;
    const Factorization fac = factorize(bigint(m), opts);
    if (!fac.complete) throw BudgetExceeded("r4_count: could not factor n");
    uint128 sigma = 1;
    for (const auto& [p, e] : fac.factors) {
        uint128 term = 1, pk = 1;
        const uint128 pu = p.convert_to<std::uint64_t>();
        for (int i = 0; i < e; ++i) {
            pk *= pu;
            term += pk;
        }
        sigma *= term;
    }
    const uint128 total = sigma * (twos > 0 ? 24 : 8);
    if (total > (uint128)INT64_MAX) throw CapExceeded("r4_count: result overflows int64");
    return (std::int64_t)total;
}

void for_each_s4(std::int64_t N, const std::function<void(std::int64_t, std::int64_t,
                                                          std::int64_t, std::int64_t)>& fn) {
    if (N < 0) throw std::invalid_argument("for_each_s4: N must be >= 0");
    if (N == 0) {
        fn(0, 0, 0, 0);
        return;
    }
    const std::int64_t X = isqrt_i64(N);
    for (std::int64_t x = -X; x <= X; ++x) {
        const std::int64_t rx = N - x * x;
        const std::int64_t Y = isqrt_i64(rx);
        for (std::int64_t y = -Y; y <= Y; ++y) {
            const std::int64_t s = rx - y * y;
            if (is_sum_two_squares_filter_u64((std::uint64_t)s, 100) == Filter3::No) continue;
            // all (z, w) with z^2 + w^2 = s, enumerated with 0 <= z <= w
            const std::int64_t zmax = isqrt_i64(s / 2);
            for (std::int64_t z = 0; z <= zmax; ++z) {
                const std::int64_t w2 = s - z * z;
                const std::int64_t w = isqrt_i64(w2);
                if (w * w != w2) continue;
                if (z == 0 && w == 0) {
                    fn(x, y, 0, 0);
                } else if (z == 0) {
                    fn(x, y, 0, w);
                    fn(x, y, 0, -w);
                    fn(x, y, w, 0);
                    fn(x, y, -w, 0);
                } else if (z == w) {
                    fn(x, y, z, z);
                    fn(x, y, z, -z);
                    fn(x, y, -z, z);
                    fn(x, y, -z, -z);
                } else {
                    for (std::int64_t sz : {z, -z}) {
                        for (std::int64_t sw : {w, -w}) {
                            fn(x, y, sz, sw);
                            fn(x, y, sw, sz);
                        }
                    }
                }
            }
        }
    }
}

std::vector<S4Tuple> enumerate_s4(std::int64_t N, std::int64_t cap) {
    if (N > cap) {
        throw CapExceeded("enumerate_s4: N = " + std::to_string(N) + " exceeds cap " +
                          std::to_string(cap));
    }
    std::vector<S4Tuple> out;
    for_each_s4(N, [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
        out.push_back({x, y, z, w});
    });
    return out;
}

}  // namespace vfive
