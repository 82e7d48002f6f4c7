#pragma once

// Dense vector kernels used by the embedding and transport-distance code.
//
// Every kernel has a portable scalar reference in swr::kernels::scalar.
// Vectorized variants (AVX2+FMA on x86-64, NEON on AArch64) live in their
// own namespaces and are only compiled when the toolchain supports them.
// The free functions in swr::kernels dispatch through a table chosen once
// at startup from the running CPU's capabilities.

#include <cstddef>
#include <span>
#include <string_view>

namespace swr::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when this binary contains the variant and the CPU can run it.
bool isa_available(Isa isa) noexcept;

/// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Pin dispatch to `isa` (falls back to scalar when unavailable).
/// Returns the variant actually selected. Not thread-safe against
/// concurrent kernel calls; meant for start-up and tests.
Isa select_isa(Isa isa) noexcept;

// Both spans must have the same length; callers check.
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_norm(std::span<const double> a) noexcept;

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_norm(std::span<const double> a) noexcept;
}  // namespace scalar

#if defined(SWR_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_norm(std::span<const double> a) noexcept;
}  // namespace avx2
#endif

#if defined(SWR_HAVE_NEON)
namespace neon {
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_norm(std::span<const double> a) noexcept;
}  // namespace neon
#endif

}  // namespace swr::kernels
