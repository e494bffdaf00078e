#include "star/simd/kernels.hpp"

namespace star::simd::scalar {

double sum(std::span<const double> xs) noexcept {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void scale(std::span<double> xs, double factor) noexcept {
  for (double& x : xs) x *= factor;
}

void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept {
  const std::size_t edges = ring_x.size() > 0 ? ring_x.size() - 1 : 0;
  for (std::size_t p = 0; p < px.size(); ++p) {
    std::uint8_t inside = 0;
    for (std::size_t e = 0; e < edges; ++e) {
      const double xi = ring_x[e], yi = ring_y[e];
      const double xj = ring_x[e + 1], yj = ring_y[e + 1];
      if ((yi > py[p]) != (yj > py[p])) {
        const double xint = (xj - xi) * (py[p] - yi) / (yj - yi) + xi;
        if (px[p] < xint) inside ^= 1;
      }
    }
    out[p] = inside;
  }
}

}  // namespace star::simd::scalar
