#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "wgl/wgl.hpp"

using namespace wgl;
using cplx = std::complex<double>;

namespace {
const VonMangoldtTable& table() {
  static auto t = build_prime_tables(60000);
  return t;
}
const ZeroSet& zeros100k() {
  static auto z = load_zeros("data/zeros_100000.txt", 100000);
  return z;
}
}  // namespace

TEST_CASE("displacement value and modulus bound") {
  auto z0 = z_of(FrequencyPoint(0.0), 100).z;
  CHECK(z0 == cplx(0.01, 0.0));
  auto z1 = z_of(FrequencyPoint(0.25), 2).z;
  CHECK(z1.real() == Catch::Approx(0.5));
  CHECK(z1.imag() == Catch::Approx(-std::numbers::pi / 2.0));
  CHECK_THROWS_AS(z_of(FrequencyPoint(0.0), 1), parameter_error);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-0.5, 0.5);
  for (int i = 0; i < 2000; ++i) {
    double a = ua(rng);
    std::uint64_t N = 2 + (rng() % 100000);
    double inv = 1.0 / std::abs(z_of(FrequencyPoint(a), N).z);
    CHECK(inv <= double(N) * (1.0 + 1e-12));
    if (a != 0.0)
      CHECK(inv <=
            1.0 / (2.0 * std::numbers::pi * std::abs(a)) * (1.0 + 1e-12));
  }
}

TEST_CASE("smooth main term anchors") {
  auto m1 = main_term(FrequencyPoint(0.0), 1000, 1);
  CHECK(m1.real() == Catch::Approx(1000.0).epsilon(1e-12));
  CHECK(m1.imag() == Catch::Approx(0.0).margin(1e-9));

  auto m2 = main_term(FrequencyPoint(0.0), 10000, 2);
  CHECK(m2.real() ==
        Catch::Approx(50.0 * std::sqrt(std::numbers::pi)).epsilon(1e-12));

  // z = (1 - i)/N at alpha = 1/(2 pi N): modulus N/sqrt(2)
  double a = 1.0 / (2.0 * std::numbers::pi * 1000.0);
  auto m3 = main_term(FrequencyPoint(a), 1000, 1);
  CHECK(std::abs(m3) == Catch::Approx(1000.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("no branch jump across zero frequency") {
  for (unsigned ell : {1u, 2u}) {
    double prev_gap = 1e9;
    for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
      auto p = main_term(FrequencyPoint(eps), 1000, ell);
      auto m = main_term(FrequencyPoint(-eps), 1000, ell);
      double gap = std::abs(p - m);
      CHECK(gap < prev_gap + 1e-9);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);  // shrinks toward continuity at 0
  }
}

TEST_CASE("zero sum edge cases") {
  bool warn = false;
  auto v = zero_sum(FrequencyPoint(0.1), 1000, 1, zeros100k(), 0, &warn);
  CHECK(v == cplx(0.0, 0.0));
  CHECK(warn);
  CHECK_THROWS_AS(
      zero_sum(FrequencyPoint(0.0), 1000, 1, zeros100k(), 100001),
      parameter_error);
}

TEST_CASE("zero sum is real for real displacement") {
  for (unsigned ell : {1u, 2u}) {
    auto v = zero_sum(FrequencyPoint(0.0), 1000, ell, zeros100k(), 1000);
    CHECK(std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v.real())));
  }
}

TEST_CASE("partial sums stabilize within the certified tail") {
  auto a = zero_sum(FrequencyPoint(0.0), 1000, 1, zeros100k(), 50000);
  auto b = zero_sum(FrequencyPoint(0.0), 1000, 1, zeros100k(), 100000);
  double tail = zero_sum_tail_bound(FrequencyPoint(0.0), 1000, 1,
                                    zeros100k().gammas[49999]);
  CHECK(std::abs(b - a) <= 10.0 * tail + 1e-13);
}

TEST_CASE("tail bound behavior") {
  // at alpha = 0 the terms decay like e^{-pi gamma / (2 ell)}: already
  // negligible at the end of the bundled table
  double far = zero_sum_tail_bound(FrequencyPoint(0.0), 1000, 1, 74920.8);
  CHECK(far >= 0.0);
  CHECK(far <= 1e-12);

  double near = zero_sum_tail_bound(FrequencyPoint(0.0), 1000, 1, 14.2);
  CHECK(near > far);
  double mid = zero_sum_tail_bound(FrequencyPoint(0.0), 1000, 1, 100.0);
  CHECK(mid < near);
  CHECK(mid > far);

  // slow-decay regime: alpha far from 0 pushes arctan toward pi/2
  double slow = zero_sum_tail_bound(FrequencyPoint(0.4), 1000, 1, 60.0);
  CHECK(slow > 0.1);

  CHECK_THROWS_AS(zero_sum_tail_bound(FrequencyPoint(0.0), 1000, 1, 10.0),
                  parameter_error);
}

TEST_CASE("error object symmetry and scale") {
  auto spec = truncation_cutoff(1, 1000, 1e-10);
  auto p = e_ell(FrequencyPoint(0.2), spec, table());
  auto m = e_ell(FrequencyPoint(-0.2), spec, table());
  CHECK(std::abs(m - std::conj(p)) <= 1e-11 * std::max(1.0, std::abs(p)));
  // at alpha = 0 the error is O(1)-scale, far below the main term N
  auto e0 = e_ell(FrequencyPoint(0.0), spec, table());
  CHECK(std::abs(e0) < 5.0);
}

TEST_CASE("explicit-formula residual stays in the recorded band") {
  for (unsigned ell : {1u, 2u}) {
    auto spec = truncation_cutoff(ell, 1000, 1e-8);
    auto r = explicit_residual(FrequencyPoint(0.0), spec, table(),
                               zeros100k(), 100000);
    CHECK(std::abs(r) <= 5.0);
  }
}

TEST_CASE("insufficient zeros is an error, not a wrong value") {
  auto spec = truncation_cutoff(1, 1000, 1e-8);
  CHECK_THROWS_AS(explicit_residual(FrequencyPoint(0.4), spec, table(),
                                    zeros100k(), 15),
                  unreliable_error);
  CHECK_THROWS_AS(explicit_residual(FrequencyPoint(0.0), spec, table(),
                                    zeros100k(), 0),
                  parameter_error);
}
