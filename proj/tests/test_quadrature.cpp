#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "wgl/wgl.hpp"

using namespace wgl;
using cplx = std::complex<double>;

TEST_CASE("orthogonality of unit phases") {
  for (int k : {0, 1, 2, 17, 100, 511, 1000, -3, -1000}) {
    auto s = EquispacedScheme::for_bandwidth(std::uint64_t(std::abs(k)));
    auto r = integrate_equispaced(
        [&](double a) { return unit_phase(double(k), a); }, s);
    double expect = (k == 0) ? 1.0 : 0.0;
    CHECK(std::abs(r.value - expect) <= 1e-13);
    CHECK(r.evaluations == s.nodes);
  }
}

TEST_CASE("equispaced certificates are enforced") {
  EquispacedScheme none{10, 0};
  CHECK_THROWS_AS(integrate_equispaced([](double) { return cplx(1.0); }, none),
                  parameter_error);
  EquispacedScheme short_of_nodes{10, 16};  // needs >= 22
  CHECK_THROWS_AS(
      integrate_equispaced([](double) { return cplx(1.0); }, short_of_nodes),
      parameter_error);
  CHECK(EquispacedScheme::for_bandwidth(10).nodes == 32);
}

TEST_CASE("kernel Parseval on the full period") {
  const std::uint64_t H = 37;
  auto s = EquispacedScheme::for_bandwidth(H);
  auto r = integrate_equispaced(
      [&](double a) {
        return cplx(std::norm(u_kernel(FrequencyPoint(a), H)), 0.0);
      },
      s);
  CHECK(r.value.real() == Catch::Approx(double(H)).epsilon(1e-12));
}

TEST_CASE("dyadic rule on plain integrands") {
  DyadicScheme s;
  auto c = integrate_dyadic([](double) { return cplx(1.0, 0.0); }, 0.0, 0.25,
                            s);
  CHECK(c.value.real() == Catch::Approx(0.25).epsilon(1e-13));
  CHECK(c.error_estimate < 1e-10);

  auto q = integrate_dyadic(
      [](double a) { return cplx(a * a, 0.0); }, -0.5, 0.5, s);
  CHECK(q.value.real() == Catch::Approx(1.0 / 12.0).epsilon(1e-12));

  // negative-only interval mirrors onto the positive side
  auto m = integrate_dyadic(
      [](double a) { return cplx(std::exp(a), 0.0); }, -0.25, -0.125, s);
  CHECK(m.value.real() ==
        Catch::Approx(std::exp(-0.125) - std::exp(-0.25)).epsilon(1e-12));

  CHECK_THROWS_AS(
      integrate_dyadic([](double) { return cplx(1.0); }, 0.3, 0.2, s),
      parameter_error);
  CHECK_THROWS_AS(
      integrate_dyadic([](double) { return cplx(1.0); }, -0.6, 0.2, s),
      parameter_error);
}

TEST_CASE("dyadic rule on an oscillatory integrand") {
  DyadicScheme s;
  s.osc_hint = 200.0;
  auto r = integrate_dyadic(
      [](double a) { return unit_phase(200.0, a); }, -0.5, 0.5, s);
  CHECK(std::abs(r.value) <= 1e-12);
  CHECK(r.error_estimate <= 1e-9);

  // half-frequency has a nonzero integral over the half period
  auto h = integrate_dyadic(
      [](double a) { return cplx(std::cos(std::numbers::pi * a), 0.0); },
      -0.5, 0.5, s);
  CHECK(h.value.real() == Catch::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("dyadic rule handles an integrable singular profile") {
  // |z|^{-1/2}-type mass at 0, the profile the panel geometry targets
  DyadicScheme s;
  auto r = integrate_dyadic(
      [](double a) { return cplx(1.0 / std::sqrt(std::abs(a)), 0.0); },
      0.0, 0.5, s);
  CHECK(r.value.real() == Catch::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-7));
}

TEST_CASE("thread count does not change dyadic results") {
  auto f = [](double a) {
    return unit_phase(37.0, a) / std::sqrt(std::abs(a) + 1e-6);
  };
  DyadicScheme s1;
  s1.osc_hint = 37.0;
  s1.threads = 1;
  DyadicScheme s8 = s1;
  s8.threads = 8;
  auto a = integrate_dyadic(f, -0.5, 0.5, s1);
  auto b = integrate_dyadic(f, -0.5, 0.5, s8);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.error_estimate == b.error_estimate);
}

TEST_CASE("thread count does not change equispaced results") {
  auto s = EquispacedScheme::for_bandwidth(300);
  auto f = [](double a) { return unit_phase(300.0, a) + cplx(0.25, 0.0); };
  auto a = integrate_equispaced(f, s, 1);
  auto b = integrate_equispaced(f, s, 6);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
}
