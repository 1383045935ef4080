#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wgl/exp_sums.hpp"
#include "wgl/gamma.hpp"
#include "wgl/zeros.hpp"

namespace wgl {

// z = 1/N - 2 pi i alpha; Re z > 0 always, so principal powers of z are
// unambiguous.
struct ComplexDisplacement {
  std::complex<double> z;
};

inline ComplexDisplacement z_of(FrequencyPoint alpha, std::uint64_t N) {
  if (N < 2) throw parameter_error("z_of: N must be >= 2");
  return {{1.0 / double(N), -2.0 * std::numbers::pi * alpha.value()}};
}

// Gamma(1/ell) / (ell z^{1/ell}), principal branch.
inline std::complex<double> main_term(FrequencyPoint alpha, std::uint64_t N,
                                      unsigned ell) {
  if (ell < 1) throw parameter_error("main_term: ell must be >= 1");
  std::complex<double> z = z_of(alpha, N).z;
  std::complex<double> g = complex_gamma(std::complex<double>(1.0 / ell, 0.0));
  return g / (double(ell) * std::exp(std::log(z) / double(ell)));
}

namespace detail {

// log Gamma(rho/ell) for rho = 1/2 + i gamma, cached per (zero set, ell):
// it is alpha-independent and alpha sweeps dominate runtime.
inline const std::vector<std::complex<double>>& gamma_cache(
    const ZeroSet& zeros, unsigned ell) {
  static std::mutex mu;
  static std::map<std::pair<std::string, unsigned>,
                  std::unique_ptr<std::vector<std::complex<double>>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(zeros.source_digest + ":" +
                                std::to_string(zeros.size()),
                            ell);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto vec = std::make_unique<std::vector<std::complex<double>>>();
    vec->reserve(zeros.size());
    for (double g : zeros.gammas)
      vec->push_back(
          log_gamma(std::complex<double>(0.5 / ell, g / double(ell))));
    it = cache.emplace(key, std::move(vec)).first;
  }
  return *it->second;
}

}  // namespace detail

// (1/ell) sum over the first K zero pairs rho = 1/2 +- i gamma of
// z^{-rho/ell} Gamma(rho/ell).  Each term is assembled in log space,
// exp(-(rho/ell) Log z + logGamma(rho/ell)), so the huge z-power and the
// decaying Gamma factor never overflow separately.
inline std::complex<double> zero_sum(FrequencyPoint alpha, std::uint64_t N,
                                     unsigned ell, const ZeroSet& zeros,
                                     std::size_t K,
                                     bool* empty_warning = nullptr) {
  if (ell < 1) throw parameter_error("zero_sum: ell must be >= 1");
  if (K > zeros.size())
    throw parameter_error("zero_sum: K exceeds available zeros");
  if (empty_warning) *empty_warning = (K == 0);
  if (K == 0) return {0.0, 0.0};

  const std::complex<double> logz = std::log(z_of(alpha, N).z);
  const std::complex<double> logz_conj = std::conj(logz);
  const auto& lg = detail::gamma_cache(zeros, ell);
  ComplexAccumulator acc;
  for (std::size_t k = 0; k < K; ++k) {
    std::complex<double> rho_over_ell(0.5 / ell,
                                      zeros.gammas[k] / double(ell));
    // rho = 1/2 + i gamma and its conjugate
    std::complex<double> up = std::exp(-rho_over_ell * logz + lg[k]);
    std::complex<double> down =
        std::conj(std::exp(-rho_over_ell * logz_conj + lg[k]));
    acc.add(up + down);
  }
  return acc.value() / double(ell);
}

// Computable upper bound on the modulus of the zero-sum tail beyond
// gamma_max.  Term moduli are bounded through Stirling with the generous
// constant 3, zero density by 2 log(gamma) per unit interval.
inline double zero_sum_tail_bound(FrequencyPoint alpha, std::uint64_t N,
                                  unsigned ell, double gamma_max) {
  if (ell < 1) throw parameter_error("zero_sum_tail_bound: ell must be >= 1");
  if (gamma_max < 14.0)
    throw parameter_error("zero_sum_tail_bound: gamma_max below first zero");
  const std::complex<double> z = z_of(alpha, N).z;
  const double theta =
      std::atan(2.0 * std::numbers::pi * double(N) * std::abs(alpha.value()));
  const double d = (std::numbers::pi / 2.0 - theta) / ell;  // decay rate
  const double expo = (1.0 - double(ell)) / (2.0 * ell);
  const double pref =
      2.0 /* conjugate pair */ * 3.0 /* Stirling */ / double(ell) *
      std::pow(std::abs(z), -1.0 / (2.0 * ell));
  auto term = [&](double g) {
    return std::pow(g / ell, expo) * std::exp(-d * g);
  };
  auto density = [](double g) { return 2.0 * std::log(g); };

  static const double gx[8] = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
      0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
      0.2223810344533745, 0.1012285362903763};
  const double width = 2.0 / d;
  double integral = 0.0, lo = gamma_max;
  bool converged = false;
  for (int panel = 0; panel < 2000; ++panel) {
    double mid = lo + 0.5 * width, half = 0.5 * width;
    double v = 0.0;
    for (int i = 0; i < 8; ++i) {
      double g = mid + half * gx[i];
      v += gw[i] * density(g) * term(g);
    }
    v *= half;
    integral += v;
    lo += width;
    if (v < 1e-14 * integral || v < 1e-300) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::numeric_limits<double>::infinity();
  // boundary spike: one unit interval of zeros at gamma_max itself
  double boundary = density(gamma_max) * term(gamma_max);
  return pref * (integral + boundary);
}

// E~_ell(alpha) = S~_ell(alpha) - Gamma(1/ell)/(ell z^{1/ell})
inline std::complex<double> e_ell(FrequencyPoint alpha,
                                  const TruncatedSeriesSpec& spec,
                                  const VonMangoldtTable& t) {
  return s_tilde(alpha, spec, t) - main_term(alpha, spec.N, spec.ell);
}

// Residual of the explicit formula: S~ - main term + zero sum; expected
// O(1) under RH.  Refuses to answer when the certified tail bound at the
// last used zero exceeds `tolerance`.
inline std::complex<double> explicit_residual(FrequencyPoint alpha,
                                              const TruncatedSeriesSpec& spec,
                                              const VonMangoldtTable& t,
                                              const ZeroSet& zeros,
                                              std::size_t K,
                                              double tolerance = 0.1) {
  if (K == 0 || K > zeros.size())
    throw parameter_error("explicit_residual: K out of range");
  double tb = zero_sum_tail_bound(alpha, spec.N, spec.ell,
                                  zeros.gammas[K - 1]);
  if (!(tb <= tolerance))
    throw unreliable_error(
        "explicit_residual: insufficient zeros (tail bound " +
        std::to_string(tb) + " > " + std::to_string(tolerance) + ")");
  return e_ell(alpha, spec, t) + zero_sum(alpha, spec.N, spec.ell, zeros, K);
}

}  // namespace wgl
