#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wgl/errors.hpp"
#include "wgl/sieve.hpp"
#include "wgl/summation.hpp"

namespace wgl {

// Candidate set: odd n with n mod 3 != 2.
inline bool is_in_A(std::uint64_t n) {
  if (n < 1) throw parameter_error("is_in_A: n must be >= 1");
  return (n % 2 == 1) && (n % 3 != 2);
}

// r(n): sum over ordered prime triples p1 + p2^2 + p3^2 = n of
// log p1 log p2 log p3.
inline double count_r(std::uint64_t n, const VonMangoldtTable& t) {
  if (n < 2) throw parameter_error("count_r: n must be >= 2");
  if (t.limit < n) throw parameter_error("count_r: table too small");
  Accumulator acc;
  for (std::uint64_t p2 : t.primes) {
    if (p2 * p2 + 4 + 2 > n) break;
    for (std::uint64_t p3 : t.primes) {
      std::uint64_t s = p2 * p2 + p3 * p3;
      if (s + 2 > n) break;
      std::uint64_t a = n - s;
      if (t.is_prime(a)) acc.add(t.lambda[a] * t.lambda[p2] * t.lambda[p3]);
    }
  }
  return acc.value();
}

// r*(n): unweighted count of the same triples.
inline std::uint64_t count_rstar(std::uint64_t n, const VonMangoldtTable& t) {
  if (n < 2) throw parameter_error("count_rstar: n must be >= 2");
  if (t.limit < n) throw parameter_error("count_rstar: table too small");
  std::uint64_t c = 0;
  for (std::uint64_t p2 : t.primes) {
    if (p2 * p2 + 4 + 2 > n) break;
    for (std::uint64_t p3 : t.primes) {
      std::uint64_t s = p2 * p2 + p3 * p3;
      if (s + 2 > n) break;
      if (t.is_prime(n - s)) ++c;
    }
  }
  return c;
}

// R(n): Lambda-weighted count over ordered triples a + b^2 + c^2 = n,
// prime powers included.
inline double count_R(std::uint64_t n, const VonMangoldtTable& t) {
  if (n < 2) throw parameter_error("count_R: n must be >= 2");
  if (t.limit < n) throw parameter_error("count_R: table too small");
  if (n < 2 + 4 + 4) return 0.0;
  auto qs = detail::lambda_support(t, detail::isqrt(n - 2 - 4));
  Accumulator acc;
  for (std::uint64_t b : qs) {
    if (b * b + 4 + 2 > n) break;
    for (std::uint64_t c : qs) {
      std::uint64_t s = b * b + c * c;
      if (s + 2 > n) break;
      acc.add(t.lambda[n - s] * t.lambda[b] * t.lambda[c]);
    }
  }
  return acc.value();
}

// c(m) = e^{-m/N} sum over ordered pairs a^2 + b^2 = m of Lambda(a)Lambda(b).
inline double two_square_coefficient(std::uint64_t m, std::uint64_t N,
                                     const VonMangoldtTable& t) {
  if (m < 2) throw parameter_error("two_square_coefficient: m must be >= 2");
  std::uint64_t root = detail::isqrt(m);
  if (t.limit < root)
    throw parameter_error("two_square_coefficient: table too small");
  Accumulator acc;
  for (std::uint64_t a = 2; a * a + 4 <= m; ++a) {
    if (t.lambda[a] == 0.0) continue;
    std::uint64_t b2 = m - a * a;
    std::uint64_t b = detail::isqrt(b2);
    if (b * b == b2 && b >= 2 && t.lambda[b] > 0.0)
      acc.add(t.lambda[a] * t.lambda[b]);
  }
  return acc.value() * std::exp(-double(m) / double(N));
}

struct IntervalSumResult {
  std::uint64_t N = 0;
  std::uint64_t H = 0;
  double sum_r = 0.0;           // sum of r(n), n in (N, N+H]
  double sum_r_weighted = 0.0;  // sum of e^{-n/N} r(n)
  double main_term = 0.0;       // (pi/4) H N
  double ratio = 0.0;           // sum_r / main_term
};

// Short-interval sum of r(n) over (N, N+H].  Iterates prime-square pairs
// (p2^2, p3^2) and resolves the window of admissible p1 through prefix
// sums, instead of a per-n triple loop.
inline IntervalSumResult interval_r_sum(std::uint64_t N, std::uint64_t H,
                                        const VonMangoldtTable& t) {
  if (H < 1) throw parameter_error("interval_r_sum: H must be >= 1");
  if (N < 2) throw parameter_error("interval_r_sum: N must be >= 2");
  if (t.limit < N + H) throw parameter_error("interval_r_sum: table too small");

  const std::uint64_t top = N + H;
  // prefix sums over primes: th[x] = sum_{p<=x} log p,
  // thw[x] = sum_{p<=x} e^{-p/N} log p
  std::vector<double> th(top + 1), thw(top + 1);
  {
    Accumulator a1, a2;
    th[0] = thw[0] = 0.0;
    for (std::uint64_t x = 1; x <= top; ++x) {
      if (x >= 2 && t.is_prime(x)) {
        a1.add(t.lambda[x]);
        a2.add(std::exp(-double(x) / double(N)) * t.lambda[x]);
      }
      th[x] = a1.value();
      thw[x] = a2.value();
    }
  }

  Accumulator sum_r, sum_w;
  for (std::uint64_t p2 : t.primes) {
    if (p2 * p2 + 4 + 2 > top) break;
    for (std::uint64_t p3 : t.primes) {
      std::uint64_t s = p2 * p2 + p3 * p3;
      if (s + 2 > top) break;
      // p1 = n - s with n in (N, N+H] and p1 >= 2
      std::uint64_t hi = top - s;
      std::uint64_t lo = (N > s + 1) ? N - s : 1;  // window is (lo, hi]
      if (hi < 2 || hi <= lo) continue;
      double w23 = t.lambda[p2] * t.lambda[p3];
      sum_r.add(w23 * (th[hi] - th[lo]));
      sum_w.add(w23 * std::exp(-double(s) / double(N)) * (thw[hi] - thw[lo]));
    }
  }

  IntervalSumResult res;
  res.N = N;
  res.H = H;
  res.sum_r = sum_r.value();
  res.sum_r_weighted = sum_w.value();
  res.main_term = std::numbers::pi / 4.0 * double(H) * double(N);
  res.ratio = res.sum_r / res.main_term;
  return res;
}

}  // namespace wgl
