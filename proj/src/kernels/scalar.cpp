#include "swr/kernels.hpp"

namespace swr::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double squared_norm(std::span<const double> a) noexcept {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return acc;
}

}  // namespace swr::kernels::scalar
