#include <doctest.h>

#include <random>
#include <vector>

#include "star/simd/kernels.hpp"

using namespace star;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("dispatch reports a supported isa") {
  CHECK(simd::isa_supported(simd::Isa::Scalar));
  CHECK(simd::isa_supported(simd::active_isa()));
  const auto before = simd::active_isa();
  CHECK(simd::set_isa(simd::Isa::Scalar));
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  if (simd::isa_supported(before)) simd::set_isa(before);
  CHECK(simd::name_of(simd::Isa::Scalar) == "scalar");
}

#if STAR_SIMD_HAVE_AVX2
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!simd::isa_supported(simd::Isa::Avx2)) return;
  std::mt19937_64 rng(11);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 15u, 64u, 1001u}) {
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);
    const double tol = 1e-12 * (1.0 + static_cast<double>(n));
    CHECK(simd::avx2::sum(a) == doctest::Approx(simd::scalar::sum(a)).epsilon(tol));
    CHECK(simd::avx2::dot(a, b) == doctest::Approx(simd::scalar::dot(a, b)).epsilon(tol));

    auto s1 = a, s2 = a;
    simd::scalar::scale(s1, 0.37);
    simd::avx2::scale(s2, 0.37);
    CHECK(s1 == s2);
  }
}

TEST_CASE("avx2 ring parity matches scalar exactly") {
  if (!simd::isa_supported(simd::Isa::Avx2)) return;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t verts = 3 + rng() % 9;
    std::vector<double> rx, ry;
    for (std::size_t i = 0; i < verts; ++i) {
      rx.push_back(u(rng));
      ry.push_back(u(rng));
    }
    rx.push_back(rx.front());
    ry.push_back(ry.front());
    const std::size_t n = 1 + rng() % 37;
    auto px = random_vec(rng, n), py = random_vec(rng, n);
    std::vector<std::uint8_t> o1(n), o2(n);
    simd::scalar::ring_crossing_parity(px, py, rx, ry, o1);
    simd::avx2::ring_crossing_parity(px, py, rx, ry, o2);
    CHECK(o1 == o2);
  }
}
#endif

TEST_CASE("scalar ring parity on a unit square") {
  std::vector<double> rx{0, 1, 1, 0, 0}, ry{0, 0, 1, 1, 0};
  std::vector<double> px{0.5, 1.5, -0.2, 0.9}, py{0.5, 0.5, 0.5, 0.1};
  std::vector<std::uint8_t> out(4);
  simd::ring_crossing_parity(px, py, rx, ry, out);
  CHECK(out == std::vector<std::uint8_t>{1, 0, 0, 1});
}

TEST_CASE("dispatched sum") {
  std::vector<double> v{2.0, 0.3};
  CHECK(simd::sum(v) == doctest::Approx(2.3));
  CHECK(simd::dot(v, v) == doctest::Approx(4.09));
}
