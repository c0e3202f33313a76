#include "vfive/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace vfive::kernels {

void residue_scan_scalar(std::int64_t base, std::int32_t first, std::size_t count,
                         std::int64_t* out) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t v = first + (std::int64_t)i;
        out[i] = base - v * v;
    }
}

void sum_squares_scan_scalar(std::int64_t base, std::int32_t first, std::size_t count,
                             std::int64_t* out) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t v = first + (std::int64_t)i;
        out[i] = base + v * v;
    }
}

#if defined(__x86_64__)
void residue_scan_avx2(std::int64_t base, std::int32_t first, std::size_t count,
                       std::int64_t* out);
void sum_squares_scan_avx2(std::int64_t base, std::int32_t first, std::size_t count,
                           std::int64_t* out);

static bool detect_avx2() { return __builtin_cpu_supports("avx2"); }
#else
static bool detect_avx2() { return false; }
#endif

namespace {
bool scalar_from_env() {
    const char* env = std::getenv("VFIVE_FORCE_SCALAR");
    return env && env[0] == '1';
}

const bool g_has_avx2 = detect_avx2();
std::atomic<bool> g_force_scalar{scalar_from_env()};

inline bool use_avx2() { return g_has_avx2 && !g_force_scalar.load(std::memory_order_relaxed); }
}  // namespace

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const char* active_implementation() { return use_avx2() ? "avx2" : "scalar"; }

void residue_scan(std::int64_t base, std::int32_t first, std::size_t count, std::int64_t* out) {
#if defined(__x86_64__)
    if (use_avx2()) {
        residue_scan_avx2(base, first, count, out);
        return;
    }
#endif
    residue_scan_scalar(base, first, count, out);
}

void sum_squares_scan(std::int64_t base, std::int32_t first, std::size_t count,
                      std::int64_t* out) {
#if defined(__x86_64__)
    if (use_avx2()) {
        sum_squares_scan_avx2(base, first, count, out);
        return;
    }
#endif
    sum_squares_scan_scalar(base, first, count, out);
}

}  // namespace vfive::kernels
