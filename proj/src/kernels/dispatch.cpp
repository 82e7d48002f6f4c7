#include "swr/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace swr::kernels {
namespace {

using BinaryFn = double (*)(std::span<const double>, std::span<const double>) noexcept;
using UnaryFn = double (*)(std::span<const double>) noexcept;

struct Table {
  Isa isa;
  BinaryFn dot;
  BinaryFn squared_distance;
  UnaryFn squared_norm;
};

constexpr Table kScalar{Isa::scalar, scalar::dot, scalar::squared_distance, scalar::squared_norm};
#if defined(SWR_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2, avx2::dot, avx2::squared_distance, avx2::squared_norm};
#endif
#if defined(SWR_HAVE_NEON)
constexpr Table kNeon{Isa::neon, neon::dot, neon::squared_distance, neon::squared_norm};
#endif

const Table* table_for(Isa isa) noexcept {
  if (!isa_available(isa)) return &kScalar;
  switch (isa) {
#if defined(SWR_HAVE_AVX2)
    case Isa::avx2:
      return &kAvx2;
#endif
#if defined(SWR_HAVE_NEON)
    case Isa::neon:
      return &kNeon;
#endif
    default:
      return &kScalar;
  }
}

Isa best_isa() noexcept {
  // SWR_SIMD=scalar forces the reference path, e.g. for bisecting numeric drift.
  if (const char* env = std::getenv("SWR_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<const Table*>& active() noexcept {
  static std::atomic<const Table*> table{table_for(best_isa())};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SWR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SWR_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed)->isa; }

Isa select_isa(Isa isa) noexcept {
  const Table* t = table_for(isa);
  active().store(t, std::memory_order_relaxed);
  return t->isa;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().load(std::memory_order_relaxed)->dot(a, b);
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return active().load(std::memory_order_relaxed)->squared_distance(a, b);
}

double squared_norm(std::span<const double> a) noexcept {
  return active().load(std::memory_order_relaxed)->squared_norm(a);
}

}  // namespace swr::kernels
