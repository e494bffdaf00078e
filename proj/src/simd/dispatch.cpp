#include <atomic>
#include <cstdlib>
#include <cstring>

#include "star/simd/kernels.hpp"

namespace star::simd {

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("STAR_SIMD"); forced != nullptr && std::strcmp(forced, "scalar") == 0)
    return Isa::Scalar;
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view name_of(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
#if STAR_SIMD_HAVE_AVX2
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool set_isa(Isa isa) noexcept {
  if (!isa_supported(isa)) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

#if STAR_SIMD_HAVE_AVX2
#define STAR_DISPATCH(fn, ...) \
  (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define STAR_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double sum(std::span<const double> xs) noexcept { return STAR_DISPATCH(sum, xs); }

double dot(std::span<const double> a, std::span<const double> b) noexcept { return STAR_DISPATCH(dot, a, b); }

void scale(std::span<double> xs, double factor) noexcept { STAR_DISPATCH(scale, xs, factor); }

void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept {
  STAR_DISPATCH(ring_crossing_parity, px, py, ring_x, ring_y, out);
}

#undef STAR_DISPATCH

}  // namespace star::simd
