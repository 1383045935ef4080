#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "wgl/errors.hpp"
#include "wgl/summation.hpp"

namespace wgl {

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;  // Richardson-style, dyadic only
  std::size_t evaluations = 0;
};

// Equispaced full-period rule: exact (up to rounding) for 1-periodic
// trigonometric polynomials with |frequency| <= bandwidth when
// nodes >= 2*bandwidth + 2 (aliasing theorem).
struct EquispacedScheme {
  std::uint64_t bandwidth = 0;  // certified maximum absolute frequency
  std::size_t nodes = 0;        // P

  static std::size_t next_pow2(std::uint64_t x) {
    std::size_t p = 1;
    while (p < x) p <<= 1;
    return p;
  }
  static EquispacedScheme for_bandwidth(std::uint64_t F) {
    return {F, next_pow2(2 * F + 2)};
  }
};

// Dyadic-adaptive rule: panels halve toward alpha = 0, per-panel Gauss
// of order 16 with bisection refinement until the two-level estimate
// meets the budget.  osc_hint is the largest frequency expected to carry
// mass; panels are pre-split so a Gauss panel never spans more than ~3
// periods of it (keeps the error estimator honest on oscillatory
// integrands).
struct DyadicScheme {
  double abs_tol = 1e-9;
  int max_depth = 54;
  double min_width = 0x1p-60;
  double osc_hint = 0.0;
  unsigned threads = 1;
};

namespace detail {

inline constexpr double kGauss16X[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kGauss16W[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <typename F>
std::complex<double> gauss16(F&& f, double lo, double hi, std::size_t& evals) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  ComplexAccumulator acc;
  for (int i = 0; i < 8; ++i) {
    acc.add(kGauss16W[i] * f(mid - half * kGauss16X[i]));
    acc.add(kGauss16W[i] * f(mid + half * kGauss16X[i]));
  }
  evals += 16;
  return half * acc.value();
}

template <typename F>
void adapt(F&& f, double lo, double hi, double tol, int depth,
           const DyadicScheme& s, ComplexAccumulator& val,
           Accumulator& err, std::size_t& evals) {
  double mid = 0.5 * (lo + hi);
  std::complex<double> coarse = gauss16(f, lo, hi, evals);
  std::complex<double> fine =
      gauss16(f, lo, mid, evals) + gauss16(f, mid, hi, evals);
  double e = std::abs(fine - coarse);
  if (e <= tol || depth >= s.max_depth || (hi - lo) <= s.min_width) {
    val.add(fine);
    err.add(e / 15.0);  // Richardson factor for an order-16 pair
    return;
  }
  adapt(f, lo, mid, 0.5 * tol, depth + 1, s, val, err, evals);
  adapt(f, mid, hi, 0.5 * tol, depth + 1, s, val, err, evals);
}

// initial panels of [a, b] with 0 < a < b: dyadic toward a = 0 side,
// then capped at ~3 periods of osc_hint
inline void initial_panels(double a, double b, const DyadicScheme& s,
                           std::vector<std::pair<double, double>>& out) {
  std::vector<std::pair<double, double>> dyadic;
  if (a == 0.0) {
    double hi = b;
    while (hi * 0.5 > s.min_width && hi > 16.0 * s.min_width) {
      dyadic.emplace_back(hi * 0.5, hi);
      hi *= 0.5;
    }
    dyadic.emplace_back(0.0, hi);
    std::reverse(dyadic.begin(), dyadic.end());
  } else {
    dyadic.emplace_back(a, b);
  }
  double cap = s.osc_hint > 0.0 ? 3.0 / s.osc_hint : (b - a);
  for (auto [lo, hi] : dyadic) {
    double w = hi - lo;
    std::size_t pieces =
        w > cap ? static_cast<std::size_t>(std::ceil(w / cap)) : 1;
    for (std::size_t i = 0; i < pieces; ++i)
      out.emplace_back(lo + w * double(i) / double(pieces),
                       lo + w * double(i + 1) / double(pieces));
  }
}

}  // namespace detail

// Dyadic-adaptive integral of f over [a, b] in [-1/2, 1/2].  Splits at 0
// when 0 is interior so that the dyadic geometry matches the |z|^{-a}
// profile of the singular factors.
template <typename F>
QuadratureResult integrate_dyadic(F&& f, double a, double b,
                                  const DyadicScheme& s) {
  if (!(a < b) || a < -0.5 || b > 0.5)
    throw parameter_error("integrate_dyadic: bad interval");

  std::vector<std::pair<double, double>> panels;
  if (a < 0.0 && b > 0.0) {
    // mirror the negative side so both halves run toward 0
    detail::initial_panels(0.0, -a, s, panels);
    for (auto& p : panels) p = {-p.second, -p.first};
    std::reverse(panels.begin(), panels.end());
    detail::initial_panels(0.0, b, s, panels);
  } else if (a >= 0.0) {
    detail::initial_panels(a, b, s, panels);
  } else {
    std::vector<std::pair<double, double>> mirrored;
    detail::initial_panels(-b, -a, s, mirrored);
    for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it)
      panels.emplace_back(-it->second, -it->first);
  }

  struct PanelOut {
    std::complex<double> value;
    double err;
    std::size_t evals;
  };
  const double total_w = b - a;
  auto outs = parallel_blocks<PanelOut>(
      panels.size(), 1, s.threads, [&](std::size_t i, std::size_t) {
        auto [lo, hi] = panels[i];
        ComplexAccumulator val;
        Accumulator err;
        std::size_t evals = 0;
        double tol = s.abs_tol * (hi - lo) / total_w;
        detail::adapt(f, lo, hi, tol, 0, s, val, err, evals);
        return PanelOut{val.value(), err.value(), evals};
      });

  QuadratureResult r;
  ComplexAccumulator val;
  Accumulator err;
  for (const auto& o : outs) {
    val.add(o.value);
    err.add(o.err);
    r.evaluations += o.evals;
  }
  r.value = val.value();
  r.error_estimate = err.value();
  return r;
}

// Full-period equispaced rule; the bandwidth certificate is mandatory.
template <typename F>
QuadratureResult integrate_equispaced(F&& f, const EquispacedScheme& s,
                                      unsigned threads = 1) {
  if (s.nodes == 0)
    throw parameter_error("integrate_equispaced: bandwidth certificate "
                          "missing (nodes == 0)");
  if (s.nodes < 2 * s.bandwidth + 2)
    throw parameter_error("integrate_equispaced: nodes < 2*bandwidth + 2");
  const std::size_t P = s.nodes;
  QuadratureResult r;
  r.value = parallel_sum(P, threads, [&](std::size_t j) {
              return f(-0.5 + double(j) / double(P));
            }) /
            double(P);
  r.evaluations = P;
  return r;
}

}  // namespace wgl
