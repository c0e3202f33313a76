// Micro-benchmark for the square-scan kernels and the search phases that
// sit on top of them. Not a test; prints ns/element so kernel changes can
// be compared quickly.
//
//   ./kernel_bench [elements]

#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "vfive/clock.hpp"
#include "vfive/direct_search.hpp"
#include "vfive/kernels.hpp"
#include "vfive/prng.hpp"
#include "vfive/sampling.hpp"

using namespace vfive;

namespace {

std::int64_t g_sink = 0;

template <class Fn>
double time_per_element(std::size_t n, int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best * 1e6 / (double)n;  // ns per element
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? (std::size_t)std::strtoull(argv[1], nullptr, 10)
                                   : (std::size_t)(1 << 22);
    std::vector<std::int64_t> out(n);
    const std::int64_t base = 1220703125LL * 977;  // ~5^13 * small prime
    const std::int32_t first = -(std::int32_t)(n / 2);

    std::printf("elements: %zu, dispatch: %s\n", n, kernels::active_implementation());

    const double scalar_res = time_per_element(n, 7, [&] {
        kernels::residue_scan_scalar(base, first, n, out.data());
        g_sink += out[n / 2];
    });
    const double fast_res = time_per_element(n, 7, [&] {
        kernels::residue_scan(base, first, n, out.data());
        g_sink += out[n / 2];
    });
    std::printf("residue_scan:     scalar %6.3f ns/elt   dispatched %6.3f ns/elt   (x%.2f)\n",
                scalar_res, fast_res, scalar_res / fast_res);

    const double scalar_sum = time_per_element(n, 7, [&] {
        kernels::sum_squares_scan_scalar(base, first, n, out.data());
        g_sink += out[n / 3];
    });
    const double fast_sum = time_per_element(n, 7, [&] {
        kernels::sum_squares_scan(base, first, n, out.data());
        g_sink += out[n / 3];
    });
    std::printf("sum_squares_scan: scalar %6.3f ns/elt   dispatched %6.3f ns/elt   (x%.2f)\n",
                scalar_sum, fast_sum, scalar_sum / fast_sum);

    // end-to-end: one direct search at 1e-5 (build + filter + probe)
    Rng rng(99);
    const auto g = random_unitary(rng);
    const double t0 = now_ms();
    const auto res = direct_search(g, Precision::of(1e-5));
    std::printf("direct_search(1e-5): v_count %d, dist %.2e, %.1f ms\n", res.circuit.v_count(),
                res.achieved_distance, now_ms() - t0);

    return g_sink == 42 ? 1 : 0;  // keep the sink live
}
