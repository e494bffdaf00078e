#pragma once

// Numeric inner loops shared by routing, spatial and graph code. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2 variant.
// The variant is picked once at startup from CPUID; STAR_SIMD=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace star::simd {

enum class Isa { Scalar, Avx2 };

std::string_view name_of(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
Isa active_isa() noexcept;
// Returns false (and changes nothing) if the ISA is unsupported on this CPU.
bool set_isa(Isa isa) noexcept;

double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void scale(std::span<double> xs, double factor) noexcept;

// out[i] = parity of crossings of the +x ray from (px[i], py[i]) with the
// closed ring (ring_x/ring_y, first vertex repeated last). Points exactly on
// the boundary are not classified here; callers test the boundary first.
void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept;

namespace scalar {
double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void scale(std::span<double> xs, double factor) noexcept;
void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define STAR_SIMD_HAVE_AVX2 1
namespace avx2 {
double sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
void scale(std::span<double> xs, double factor) noexcept;
void ring_crossing_parity(std::span<const double> px, std::span<const double> py,
                          std::span<const double> ring_x, std::span<const double> ring_y,
                          std::span<std::uint8_t> out) noexcept;
}  // namespace avx2
#else
#define STAR_SIMD_HAVE_AVX2 0
#endif

}  // namespace star::simd
