#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "wgl/errors.hpp"

namespace wgl {

namespace detail {

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

}  // namespace detail

// log Gamma(s) for Re(s) > 0 (the only region this project needs: zero
// sums use s = rho/ell with Re(rho) = 1/2).  Arguments left of Re = 1/2
// are shifted up through the recurrence, which avoids the reflection
// formula and its overflow-prone sin(pi s).  The imaginary part is a
// log-branch representative, not the continuous logGamma branch; only
// exp(log_gamma) is consumed downstream.
inline std::complex<double> log_gamma(std::complex<double> s) {
  if (s.real() <= 0.0 && s.imag() == 0.0 && s.real() == std::floor(s.real()))
    throw parameter_error("log_gamma: pole at nonpositive integer");
  std::complex<double> shift = 0.0;
  int guard = 0;
  while (s.real() < 0.5) {
    shift += std::log(s);
    s += 1.0;
    if (++guard > 64)
      throw parameter_error("log_gamma: argument too far left");
  }
  std::complex<double> x = s - 1.0;
  std::complex<double> sum = detail::kLanczosC[0];
  for (int k = 1; k < 15; ++k) sum += detail::kLanczosC[k] / (x + double(k));
  std::complex<double> t = x + detail::kLanczosG + 0.5;
  return (x + 0.5) * std::log(t) - t +
         std::log(std::sqrt(2.0 * std::numbers::pi) * sum) - shift;
}

inline std::complex<double> complex_gamma(std::complex<double> s) {
  return std::exp(log_gamma(s));
}

}  // namespace wgl
