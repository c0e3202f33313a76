#pragma once

#include <cstddef>
#include <cstdint>

namespace vfive::kernels {

/// out[i] = base - (first + i)^2 for i in [0, count).
///
/// Integer domain contract (callers enforce): |first| and |first + count|
/// below 2^31, and |base| small enough that base +/- squares stay in int64
/// (searches use these with |base| <= 5^27).
void residue_scan(std::int64_t base, std::int32_t first, std::size_t count, std::int64_t* out);

/// out[i] = base + (first + i)^2 for i in [0, count). Same domain contract.
void sum_squares_scan(std::int64_t base, std::int32_t first, std::size_t count, std::int64_t* out);

/// Scalar reference implementations, exposed for equivalence testing.
void residue_scan_scalar(std::int64_t base, std::int32_t first, std::size_t count,
                         std::int64_t* out);
void sum_squares_scan_scalar(std::int64_t base, std::int32_t first, std::size_t count,
                             std::int64_t* out);

/// Name of the dispatched implementation ("avx2" or "scalar").
const char* active_implementation();

/// Test hook: when true, the dispatchers always take the scalar path.
void force_scalar(bool on);

}  // namespace vfive::kernels
