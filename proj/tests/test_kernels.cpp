#include "frsne/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

using namespace frsne::kernels;

namespace {

std::vector<cplx> random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_reals(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

template <class T>
bool bitwise_equal(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

// Sizes around the vector width, including odd tails.
const std::size_t sizes[] = {2, 3, 4, 5, 7, 8, 9, 16, 17, 63, 64, 65, 1000, 2001};

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("isa names and selection") {
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
  const Isa before = active().isa;
  select(Isa::scalar);
  CHECK(active().isa == Isa::scalar);
  if (avx2_table() != nullptr) {
    select(Isa::avx2);
    CHECK(active().isa == Isa::avx2);
  } else {
    CHECK_THROWS(select(Isa::avx2));
  }
  select(before);
}

TEST_CASE("scalar radial_rhs matches the defining formula") {
  const std::size_t n = 9;
  const auto u = random_field(n, 1);
  const auto v = random_reals(n, 2);
  const RhsCoefficients c{0.7, 0.3, 0.9, -0.2};
  std::vector<cplx> out(n);
  scalar_table().radial_rhs(u.data(), v.data(), c, out.data(), n);
  const cplx i(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx left = j == 0 ? -u[0] : u[j - 1];
    const cplx right = j + 1 == n ? -u[n - 1] : u[j + 1];
    const cplx expect = i * c.kin * (left - 2.0 * u[j] + right) - c.friction * (v[j] - c.vmean) * u[j] -
                        i * c.unitary * v[j] * u[j];
    CHECK(std::abs(out[j] - expect) < 1e-14 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("scalar reductions and updates match plain loops") {
  const std::size_t n = 37;
  const auto u = random_field(n, 3);
  const auto a = random_reals(n, 4);
  const auto b = random_reals(n, 5);
  const auto& t = scalar_table();
  double dot = 0.0, sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    dot += a[j] * b[j];
    sq += std::norm(u[j]);
  }
  CHECK(t.dot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-14));
  CHECK(t.sum_abs_sq(u.data(), n) == doctest::Approx(sq).epsilon(1e-14));

  std::vector<double> abs2(n);
  t.abs_sq(u.data(), abs2.data(), n);
  for (std::size_t j = 0; j < n; ++j) CHECK(abs2[j] == doctest::Approx(std::norm(u[j])).epsilon(1e-15));

  std::vector<double> pot(n);
  const auto inv = random_reals(n, 6, 0.1, 10.0);
  t.combine_potential(a.data(), b.data(), inv.data(), -2.5, pot.data(), n);
  for (std::size_t j = 0; j < n; ++j) CHECK(pot[j] == doctest::Approx(-2.5 * (a[j] * inv[j] + b[j])).epsilon(1e-15));

  auto acc = random_field(n, 7);
  const auto base = random_field(n, 8);
  const auto k = random_field(n, 9);
  std::vector<cplx> stage(n);
  const auto acc0 = acc;
  t.rk_stage(acc.data(), stage.data(), base.data(), k.data(), 1.0 / 3.0, 0.5, n);
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(std::abs(acc[j] - (acc0[j] + (1.0 / 3.0) * k[j])) < 1e-15 * (1.0 + std::abs(acc[j])));
    CHECK(std::abs(stage[j] - (base[j] + 0.5 * k[j])) < 1e-15 * (1.0 + std::abs(stage[j])));
  }
}

TEST_CASE("AVX2 pointwise kernels are bit-identical to scalar") {
  const KernelTable* simd = avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
    return;
  }
  const auto& ref = scalar_table();
  for (std::size_t n : sizes) {
    CAPTURE(n);
    const auto u = random_field(n, 100 + n);
    const auto v = random_reals(n, 200 + n, -3.0, 0.0);
    const auto a = random_reals(n, 300 + n);
    const auto b = random_reals(n, 400 + n);
    const auto inv = random_reals(n, 500 + n, 0.01, 100.0);

    std::vector<double> x1(n), x2(n);
    ref.abs_sq(u.data(), x1.data(), n);
    simd->abs_sq(u.data(), x2.data(), n);
    CHECK(bitwise_equal(x1, x2));

    ref.combine_potential(a.data(), b.data(), inv.data(), -12.566, x1.data(), n);
    simd->combine_potential(a.data(), b.data(), inv.data(), -12.566, x2.data(), n);
    CHECK(bitwise_equal(x1, x2));

    for (const RhsCoefficients c : {RhsCoefficients{1250.0, 0.0, 1.0, -0.3}, RhsCoefficients{3.0, 0.6, 0.8, 0.1},
                                    RhsCoefficients{1.0, 1.0, 0.0, 0.0}}) {
      std::vector<cplx> o1(n), o2(n);
      ref.radial_rhs(u.data(), v.data(), c, o1.data(), n);
      simd->radial_rhs(u.data(), v.data(), c, o2.data(), n);
      CHECK(bitwise_equal(o1, o2));
    }

    auto acc1 = random_field(n, 600 + n), acc2 = acc1;
    const auto base = random_field(n, 700 + n);
    const auto k = random_field(n, 800 + n);
    std::vector<cplx> s1(n), s2(n);
    ref.rk_stage(acc1.data(), s1.data(), base.data(), k.data(), 1.0 / 6.0, 0.5, n);
    simd->rk_stage(acc2.data(), s2.data(), base.data(), k.data(), 1.0 / 6.0, 0.5, n);
    CHECK(bitwise_equal(acc1, acc2));
    CHECK(bitwise_equal(s1, s2));

    auto y1 = base, y2 = base;
    ref.axpy(y1.data(), k.data(), 0.125, n);
    simd->axpy(y2.data(), k.data(), 0.125, n);
    CHECK(bitwise_equal(y1, y2));

    ref.scale(y1.data(), 1.0 / 3.0, n);
    simd->scale(y2.data(), 1.0 / 3.0, n);
    CHECK(bitwise_equal(y1, y2));
  }
}

TEST_CASE("AVX2 reductions agree with scalar to summation-order rounding") {
  const KernelTable* simd = avx2_table();
  if (simd == nullptr) return;
  const auto& ref = scalar_table();
  for (std::size_t n : sizes) {
    CAPTURE(n);
    const auto u = random_field(n, 900 + n);
    const auto a = random_reals(n, 1000 + n, 0.0, 1.0);
    const auto b = random_reals(n, 1100 + n, 0.0, 1.0);
    const double d1 = ref.dot(a.data(), b.data(), n), d2 = simd->dot(a.data(), b.data(), n);
    const double s1 = ref.sum_abs_sq(u.data(), n), s2 = simd->sum_abs_sq(u.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-14 * std::abs(d1));
    CHECK(std::abs(s1 - s2) <= 1e-14 * std::abs(s1));
  }
}

} // TEST_SUITE
