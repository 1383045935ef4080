#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wgl/explicit_formula.hpp"
#include "wgl/grid.hpp"
#include "wgl/quadrature.hpp"
#include "wgl/representations.hpp"

namespace wgl {

namespace detail {

// e(-n * alpha_j) on the equispaced grid alpha_j = -1/2 + j/P, with the
// phase reduced through exact integer arithmetic
inline std::complex<double> grid_phase(std::uint64_t n, std::size_t j,
                                       std::size_t P) {
  std::uint64_t m = (n * j) % P;
  double a = -2.0 * std::numbers::pi * double(m) / double(P);
  std::complex<double> ph{std::cos(a), std::sin(a)};
  return (n & 1) ? -ph : ph;
}

inline std::vector<std::complex<double>> product_grid(
    const SeriesGrid& g1, const SeriesGrid& g2, unsigned threads) {
  std::vector<std::complex<double>> prod(g1.P);
  parallel_blocks<int>(g1.P, 1 << 14, threads,
                       [&](std::size_t lo, std::size_t hi) {
                         for (std::size_t j = lo; j < hi; ++j)
                           prod[j] = g1.values[j] * g2.values[j] *
                                     g2.values[j];
                         return 0;
                       });
  return prod;
}

}  // namespace detail

// e^{n/N} int S~1 S~2^2 e(-n alpha) d alpha for a batch of n sharing one
// certified grid; equals R(n) for the untruncated series.
inline std::vector<double> reconstruct_R_many(
    const std::vector<std::uint64_t>& ns, std::uint64_t N,
    const TruncatedSeriesSpec& spec1, const TruncatedSeriesSpec& spec2,
    const VonMangoldtTable& table, unsigned threads = 1) {
  if (ns.empty()) return {};
  if (spec1.ell != 1 || spec2.ell != 2)
    throw parameter_error("reconstruct_R: specs must be (ell=1, ell=2)");
  std::uint64_t nmax = 0;
  for (auto n : ns) {
    if (n < 2) throw parameter_error("reconstruct_R: n must be >= 2");
    nmax = std::max(nmax, n);
  }
  const std::uint64_t F = spec1.M + 2 * spec2.M * spec2.M + nmax;
  auto scheme = EquispacedScheme::for_bandwidth(F);
  if (scheme.nodes > (std::size_t(1) << 27))
    throw resource_error("reconstruct_R: bandwidth infeasible; use smaller N");
  auto g1 = GridCache::instance().get(spec1, scheme.nodes, table);
  auto g2 = GridCache::instance().get(spec2, scheme.nodes, table);
  auto prod = detail::product_grid(*g1, *g2, threads);

  std::vector<double> out;
  out.reserve(ns.size());
  const std::size_t P = scheme.nodes;
  for (auto n : ns) {
    auto v = parallel_sum(P, threads, [&](std::size_t j) {
      return prod[j] * detail::grid_phase(n, j, P);
    });
    out.push_back(std::exp(double(n) / double(N)) * v.real() / double(P));
  }
  return out;
}

inline double reconstruct_R(std::uint64_t n, std::uint64_t N,
                            const TruncatedSeriesSpec& spec1,
                            const TruncatedSeriesSpec& spec2,
                            const VonMangoldtTable& table,
                            unsigned threads = 1) {
  return reconstruct_R_many({n}, N, spec1, spec2, table, threads)[0];
}

// S~(N, H) = sum_{n=N+1}^{N+H} e^{-n/N} r-ish mass, computed as
// int S~1 S~2^2 U(-alpha, H) e(-N alpha) d alpha on a certified grid.
inline std::complex<double> weighted_interval_integral(
    std::uint64_t N, std::uint64_t H, const TruncatedSeriesSpec& spec1,
    const TruncatedSeriesSpec& spec2, const VonMangoldtTable& table,
    unsigned threads = 1) {
  if (H < 1) throw parameter_error("weighted_interval_integral: H >= 1");
  const std::uint64_t F = spec1.M + 2 * spec2.M * spec2.M + N + H;
  auto scheme = EquispacedScheme::for_bandwidth(F);
  if (scheme.nodes > (std::size_t(1) << 27))
    throw resource_error(
        "weighted_interval_integral: bandwidth infeasible; use smaller N");
  auto g1 = GridCache::instance().get(spec1, scheme.nodes, table);
  auto g2 = GridCache::instance().get(spec2, scheme.nodes, table);
  auto prod = detail::product_grid(*g1, *g2, threads);
  const std::size_t P = scheme.nodes;
  auto v = parallel_sum(P, threads, [&](std::size_t j) {
    double alpha = -0.5 + double(j) / double(P);
    return prod[j] * u_kernel(FrequencyPoint(-alpha), H) *
           detail::grid_phase(N, j, P);
  });
  return v / double(P);
}

struct I123Report {
  std::complex<double> I1, I2, I3;
  std::complex<double> total;  // I1 + I2 + I3 by definition
  double direct = 0.0;         // sieve value of sum e^{-n/N} R(n)
  std::uint64_t N = 0, H = 0;
  double max_rel_gap = 0.0;
  double error_estimate = 0.0;  // summed adaptive estimates
  bool unreliable = false;
};

namespace detail {

// 2 Re of the [0, 1/2] integral; every integrand here satisfies
// f(-alpha) = conj(f(alpha))
template <typename F>
QuadratureResult fold_integrate(F&& f, double b, const DyadicScheme& s) {
  auto r = integrate_dyadic(f, 0.0, b, s);
  r.value = 2.0 * r.value.real();
  r.error_estimate *= 2.0;
  return r;
}

}  // namespace detail

// Splits the weighted interval integral into the main-term piece I1 and
// the two error pieces I2, I3; each piece carries singular z-powers, so
// the pieces are integrated dyadically while their sum is cross-checked
// against the direct sieve value.
inline I123Report decompose_I123(std::uint64_t N, std::uint64_t H,
                                 const TruncatedSeriesSpec& spec1,
                                 const TruncatedSeriesSpec& spec2,
                                 const VonMangoldtTable& table,
                                 DyadicScheme base = {}) {
  if (H < 1) throw parameter_error("decompose_I123: H must be >= 1");
  if (table.limit < N + H)
    throw parameter_error("decompose_I123: table too small");

  constexpr double pi = std::numbers::pi;
  auto zf = [N](double a) {
    return std::complex<double>(1.0 / double(N), -2.0 * pi * a);
  };
  auto Ue = [N, H](double a) {  // U(-alpha, H) e(-N alpha)
    return u_kernel(FrequencyPoint(-a), H) * unit_phase(double(N), -a);
  };
  auto s2sq = [&](double a) {
    auto v = s_tilde(FrequencyPoint(a), spec2, table);
    return v * v;
  };

  DyadicScheme s1 = base;
  s1.osc_hint = double(N + H);
  auto i1 = detail::fold_integrate(
      [&](double a) {
        auto z = zf(a);
        return pi / (4.0 * z * z) * Ue(a);
      },
      0.5, s1);

  DyadicScheme s2 = base;
  s2.osc_hint = double(2 * spec2.M * spec2.M + N + H);
  auto i2 = detail::fold_integrate(
      [&](double a) {
        auto z = zf(a);
        return (s2sq(a) - pi / (4.0 * z)) / z * Ue(a);
      },
      0.5, s2);

  DyadicScheme s3 = base;
  s3.osc_hint = double(spec1.M + 2 * spec2.M * spec2.M + N + H);
  auto i3 = detail::fold_integrate(
      [&](double a) {
        auto z = zf(a);
        return (s_tilde(FrequencyPoint(a), spec1, table) - 1.0 / z) *
               s2sq(a) * Ue(a);
      },
      0.5, s3);

  I123Report rep;
  rep.N = N;
  rep.H = H;
  rep.I1 = i1.value;
  rep.I2 = i2.value;
  rep.I3 = i3.value;
  rep.total = i1.value + i2.value + i3.value;
  Accumulator direct;
  for (std::uint64_t n = N + 1; n <= N + H; ++n)
    direct.add(std::exp(-double(n) / double(N)) * count_R(n, table));
  rep.direct = direct.value();
  rep.max_rel_gap = std::abs(rep.total - rep.direct) /
                    std::max(1.0, std::abs(rep.direct));
  rep.error_estimate =
      i1.error_estimate + i2.error_estimate + i3.error_estimate;
  rep.unreliable = rep.error_estimate > 0.01 * std::abs(rep.I1);
  return rep;
}

struct LaplaceCheckResult {
  std::uint64_t n = 0;
  double mu = 0.0;
  std::uint64_t N = 0;
  std::complex<double> quadrature_value;
  double closed_form = 0.0;  // e^{-n/N} n^{mu-1} / Gamma(mu)
  double abs_err = 0.0;
  double scaled_err = 0.0;  // abs_err * n
  double quad_error_estimate = 0.0;
  bool unreliable = false;
};

// int_{-1/2}^{1/2} z^{-mu} e(-n alpha) d alpha against the Laplace-Gamma
// closed form; the integrand is not band-limited, dyadic only.
inline LaplaceCheckResult laplace_check(std::uint64_t n, std::uint64_t N,
                                        double mu, DyadicScheme scheme = {}) {
  if (!(mu > 0)) throw parameter_error("laplace_check: mu must be > 0");
  if (n < 1) throw parameter_error("laplace_check: n must be >= 1");
  constexpr double pi = std::numbers::pi;
  if (scheme.osc_hint <= 0.0) scheme.osc_hint = double(n);
  auto r = detail::fold_integrate(
      [&](double a) {
        std::complex<double> z(1.0 / double(N), -2.0 * pi * a);
        return std::exp(-mu * std::log(z)) * unit_phase(double(n), -a);
      },
      0.5, scheme);
  LaplaceCheckResult res;
  res.n = n;
  res.mu = mu;
  res.N = N;
  res.quadrature_value = r.value;
  res.closed_form = std::exp(-double(n) / double(N)) *
                    std::pow(double(n), mu - 1.0) / std::tgamma(mu);
  res.abs_err = std::abs(r.value - res.closed_form);
  res.scaled_err = res.abs_err * double(n);
  res.quad_error_estimate = r.error_estimate;
  res.unreliable = r.error_estimate > res.abs_err / 10.0;
  return res;
}

struct MomentResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool range_warning = false;
};

// int_{-xi}^{xi} |S~_ell - Gamma(1/ell)/(ell z^{1/ell})|^2 d alpha
inline MomentResult l2_error_moment(std::uint64_t N, unsigned ell, double xi,
                                    const TruncatedSeriesSpec& spec,
                                    const VonMangoldtTable& table,
                                    DyadicScheme scheme = {}) {
  if (!(xi > 0.0 && xi <= 0.5))
    throw parameter_error("l2_error_moment: xi must be in (0, 1/2]");
  if (spec.ell != ell || spec.N != N)
    throw parameter_error("l2_error_moment: spec mismatch");
  if (scheme.osc_hint <= 0.0)
    scheme.osc_hint = 2.0 * double(detail::ipow(spec.M, ell));
  auto r = detail::fold_integrate(
      [&](double a) {
        return std::complex<double>(
            std::norm(e_ell(FrequencyPoint(a), spec, table)), 0.0);
      },
      xi, scheme);
  return {r.value.real(), r.error_estimate, false};
}

// int_{-1/H}^{1/H} |S_ell - T_ell|^2 d alpha (the finite-sum comparison)
inline MomentResult mean_square_S_minus_T(std::uint64_t N, unsigned ell,
                                          std::uint64_t H,
                                          const VonMangoldtTable& table,
                                          DyadicScheme scheme = {}) {
  if (ell < 1) throw parameter_error("mean_square_S_minus_T: ell >= 1");
  if (N < detail::ipow(2, ell))
    throw parameter_error("mean_square_S_minus_T: N below 2^ell");
  if (H < 1) throw parameter_error("mean_square_S_minus_T: H must be >= 1");
  std::uint64_t top = detail::iroot(N, ell);
  if (table.limit < top)
    throw parameter_error("mean_square_S_minus_T: table too small");

  // S_ell - T_ell = sum_{n^ell <= N} w_n e(n^ell alpha),
  // w_n = [n prime] log n - 1
  std::vector<std::pair<double, double>> terms;  // (frequency, weight)
  terms.reserve(top);
  for (std::uint64_t n = 1; n <= top; ++n) {
    double w = (n >= 2 && table.is_prime(n)) ? std::log(double(n)) - 1.0
                                             : -1.0;
    terms.emplace_back(double(detail::ipow(n, ell)), w);
  }
  auto diff = [&](double a) {
    ComplexAccumulator acc;
    for (auto [k, w] : terms) acc.add(w * unit_phase(k, a));
    return acc.value();
  };
  if (scheme.osc_hint <= 0.0) scheme.osc_hint = 2.0 * double(N);
  auto r = detail::fold_integrate(
      [&](double a) {
        return std::complex<double>(std::norm(diff(a)), 0.0);
      },
      1.0 / double(H), scheme);

  MomentResult out{r.value.real(), r.error_estimate, false};
  // RH range of the comparison lemma: N^{1-1/ell} <= H <= N
  double lo = std::pow(double(N), 1.0 - 1.0 / double(ell));
  out.range_warning = !(double(H) >= lo && H <= N);
  return out;
}

// Full-period fourth moment of S~_2 on a certified equispaced grid.
inline double fourth_moment_quadrature(std::uint64_t N,
                                       const TruncatedSeriesSpec& spec,
                                       const VonMangoldtTable& table,
                                       unsigned threads = 1) {
  if (spec.ell != 2)
    throw parameter_error("fourth_moment_quadrature: spec.ell must be 2");
  if (spec.N != N)
    throw parameter_error("fourth_moment_quadrature: N/spec mismatch");
  const std::uint64_t F = 2 * (2 * spec.M * spec.M);
  auto scheme = EquispacedScheme::for_bandwidth(F);
  if (scheme.nodes > (std::size_t(1) << 26))
    throw resource_error(
        "fourth_moment_quadrature: bandwidth infeasible; use smaller N");
  auto g = GridCache::instance().get(spec, scheme.nodes, table);
  const std::size_t P = scheme.nodes;
  auto v = parallel_sum(P, threads, [&](std::size_t j) {
    double m2 = std::norm(g->values[j]);
    return std::complex<double>(m2 * m2, 0.0);
  });
  return v.real() / double(P);
}

}  // namespace wgl
