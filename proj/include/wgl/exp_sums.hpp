#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wgl/errors.hpp"
#include "wgl/sieve.hpp"
#include "wgl/summation.hpp"

namespace wgl {

// Frequency on the unit circle of the circle method; range checked at
// construction.
class FrequencyPoint {
public:
  explicit FrequencyPoint(double alpha) : alpha_(alpha) {
    if (!(alpha >= -0.5 && alpha <= 0.5))
      throw parameter_error("FrequencyPoint: alpha outside [-1/2, 1/2]");
  }
  double value() const { return alpha_; }

private:
  double alpha_;
};

// e(x) = exp(2 pi i x), with the argument reduced mod 1 before the
// trigonometric call.  The (k, alpha) overload recovers the rounding
// error of the product with an fma so that phases of large k*alpha keep
// full precision.
inline std::complex<double> unit_phase(double x) {
  double t = x - std::round(x);
  double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

inline std::complex<double> unit_phase(double k, double alpha) {
  double p = k * alpha;
  double err = std::fma(k, alpha, -p);
  double t = (p - std::round(p)) + err;
  double a = 2.0 * std::numbers::pi * (t - std::round(t));
  return {std::cos(a), std::sin(a)};
}

namespace detail {

inline std::uint64_t ipow(std::uint64_t n, unsigned ell) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < ell; ++i) r *= n;
  return r;
}

// largest n with n^ell <= x
inline std::uint64_t iroot(std::uint64_t x, unsigned ell) {
  if (ell == 1) return x;
  auto r = static_cast<std::uint64_t>(std::pow(double(x), 1.0 / ell));
  while (r > 0 && ipow(r, ell) > x) --r;
  while (ipow(r + 1, ell) <= x) ++r;
  return r;
}

}  // namespace detail

// Truncation control for the damped series: sum_{n>M} Lambda(n)
// e^{-n^ell/N} <= certificate <= tail_eps, with the certificate computed
// from Lambda(n) <= log n and an integral comparison.
struct TruncatedSeriesSpec {
  unsigned ell = 1;
  std::uint64_t N = 2;
  std::uint64_t M = 1;     // series truncated after n = M
  double tail_eps = 0.0;   // requested bound
  double certificate = 0.0;  // computed tail bound at M
};

namespace detail {

// integral of log t * e^{-t^ell/N} over [M, infinity), numerically, by
// fixed-order Gauss panels scaled to the local decay length
inline double log_weight_tail_integral(double M, unsigned ell, double N) {
  static const double gx[8] = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
      0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
      0.2223810344533745, 0.1012285362903763};
  auto f = [&](double t) {
    return std::log(t) * std::exp(-std::pow(t, double(ell)) / N);
  };
  double decay = ell * std::pow(M, double(ell) - 1.0) / N;  // rate at M
  double width = 2.0 / decay;
  double total = 0.0, lo = M;
  for (int panel = 0; panel < 400; ++panel) {
    double hi = lo + width;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double v = 0.0;
    for (int i = 0; i < 8; ++i) v += gw[i] * f(mid + half * gx[i]);
    v *= half;
    total += v;
    if (v < 1e-14 * total || v < 1e-300) break;
    lo = hi;
  }
  return total;
}

// valid upper bound on sum_{n>M} log n * e^{-n^ell/N}; requires the
// summand to be nonincreasing from M on, i.e. ell * M^ell * log M >= N
inline double tail_certificate(std::uint64_t M, unsigned ell,
                               std::uint64_t N) {
  double m = double(M);
  double boundary =
      std::log(m + 1.0) * std::exp(-std::pow(m + 1.0, double(ell)) / double(N));
  return log_weight_tail_integral(m, ell, double(N)) + boundary;
}

inline std::uint64_t monotone_start(unsigned ell, std::uint64_t N) {
  std::uint64_t M = 2;
  while (double(ell) * std::pow(double(M), double(ell)) * std::log(double(M)) <
         double(N))
    ++M;
  return M;
}

}  // namespace detail

// Smallest cutoff M whose stored tail certificate is <= eps.
inline TruncatedSeriesSpec truncation_cutoff(unsigned ell, std::uint64_t N,
                                             double eps) {
  if (ell < 1) throw parameter_error("truncation_cutoff: ell must be >= 1");
  if (N < 2) throw parameter_error("truncation_cutoff: N must be >= 2");
  if (!(eps > 0)) throw parameter_error("truncation_cutoff: eps must be > 0");

  const std::uint64_t M0 = detail::monotone_start(ell, N);
  std::uint64_t hi = M0;
  while (detail::tail_certificate(hi, ell, N) > eps) {
    if (hi > (std::uint64_t(1) << 31) ||
        detail::ipow(hi, ell) > (std::uint64_t(1) << 62))
      throw resource_error("truncation_cutoff: eps demands a cutoff beyond "
                           "the table ceiling");
    hi *= 2;
  }
  std::uint64_t lo = std::max<std::uint64_t>(M0, hi / 2);
  while (lo < hi) {  // first M in [lo, hi] with certificate <= eps
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (detail::tail_certificate(mid, ell, N) <= eps)
      hi = mid;
    else
      lo = mid + 1;
  }
  TruncatedSeriesSpec spec;
  spec.ell = ell;
  spec.N = N;
  spec.M = hi;
  spec.tail_eps = eps;
  spec.certificate = detail::tail_certificate(hi, ell, N);
  return spec;
}

// S_ell(alpha) = sum_{p^ell <= N} log p * e(p^ell alpha)
inline std::complex<double> s_ell(FrequencyPoint alpha, unsigned ell,
                                  std::uint64_t N,
                                  const VonMangoldtTable& t) {
  std::uint64_t top = detail::iroot(N, ell);
  if (t.limit < top) throw parameter_error("s_ell: table too small");
  ComplexAccumulator acc;
  for (std::uint64_t p : t.primes) {
    if (p > top) break;
    acc.add(std::log(double(p)) *
            unit_phase(double(detail::ipow(p, ell)), alpha.value()));
  }
  return acc.value();
}

// T_ell(alpha) = sum_{n^ell <= N} e(n^ell alpha)
inline std::complex<double> t_ell(FrequencyPoint alpha, unsigned ell,
                                  std::uint64_t N) {
  if (N < 1) throw parameter_error("t_ell: N must be >= 1");
  std::uint64_t top = detail::iroot(N, ell);
  ComplexAccumulator acc;
  for (std::uint64_t n = 1; n <= top; ++n)
    acc.add(unit_phase(double(detail::ipow(n, ell)), alpha.value()));
  return acc.value();
}

// Damped series S~_ell(alpha) truncated at spec.M; absolute truncation
// error bounded by spec.certificate.
inline std::complex<double> s_tilde(FrequencyPoint alpha,
                                    const TruncatedSeriesSpec& spec,
                                    const VonMangoldtTable& t) {
  if (t.limit < spec.M) throw parameter_error("s_tilde: table too small");
  ComplexAccumulator acc;
  for (std::uint64_t n = 2; n <= spec.M; ++n) {
    double lam = t.lambda[n];
    if (lam == 0.0) continue;
    double k = double(detail::ipow(n, spec.ell));
    acc.add(lam * std::exp(-k / double(spec.N)) *
            unit_phase(k, alpha.value()));
  }
  return acc.value();
}

// U(alpha, H) = sum_{m=1}^{H} e(m alpha); geometric closed form with a
// direct-summation branch near alpha = 0 where the closed form cancels.
inline std::complex<double> u_kernel(FrequencyPoint alpha, std::uint64_t H) {
  if (H < 1) throw parameter_error("u_kernel: H must be >= 1");
  double a = alpha.value();
  if (std::abs(a) < 1e-8 / double(H)) {
    ComplexAccumulator acc;
    for (std::uint64_t m = 1; m <= H; ++m)
      acc.add(unit_phase(double(m), a));
    return acc.value();
  }
  double s = std::sin(std::numbers::pi * a);
  return unit_phase(0.5 * double(H + 1) * a) *
         (std::sin(std::numbers::pi * double(H) * a) / s);
}

// Exact second moment by orthogonality:
// int |S~_ell|^2 = sum_n Lambda(n)^2 e^{-2 n^ell / N}, truncated at M.
inline double parseval_second_moment(unsigned ell,
                                     const TruncatedSeriesSpec& spec,
                                     const VonMangoldtTable& t) {
  if (ell != spec.ell)
    throw parameter_error("parseval_second_moment: ell/spec mismatch");
  if (t.limit < spec.M)
    throw parameter_error("parseval_second_moment: table too small");
  Accumulator acc;
  for (std::uint64_t n = 2; n <= spec.M; ++n) {
    double lam = t.lambda[n];
    if (lam == 0.0) continue;
    double k = double(detail::ipow(n, spec.ell));
    acc.add(lam * lam * std::exp(-2.0 * k / double(spec.N)));
  }
  return acc.value();
}

// Fourth moment of S~_2 in coefficient space: sum_m c(m)^2 with
// c(m) = e^{-m/N} sum_{a^2+b^2=m} Lambda(a)Lambda(b), m <= 2 M^2.
inline double parseval_fourth_moment_s2(std::uint64_t N,
                                        const TruncatedSeriesSpec& spec,
                                        const VonMangoldtTable& t) {
  if (spec.ell != 2)
    throw parameter_error("parseval_fourth_moment_s2: spec.ell must be 2");
  if (N != spec.N)
    throw parameter_error("parseval_fourth_moment_s2: N/spec mismatch");
  if (t.limit < spec.M)
    throw parameter_error("parseval_fourth_moment_s2: table too small");
  const std::uint64_t mmax = 2 * spec.M * spec.M;
  std::vector<double> c(mmax + 1, 0.0);
  auto qs = detail::lambda_support(t, spec.M);
  for (std::uint64_t a : qs)
    for (std::uint64_t b : qs)
      c[a * a + b * b] += t.lambda[a] * t.lambda[b];
  Accumulator acc;
  for (std::uint64_t m = 0; m <= mmax; ++m) {
    if (c[m] == 0.0) continue;
    double cm = std::exp(-double(m) / double(N)) * c[m];
    acc.add(cm * cm);
  }
  return acc.value();
}

}  // namespace wgl
