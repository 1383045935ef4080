// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit on
// any failure.  Reference values come from independent slow oracles
// (trial division, exhaustive triple loops) evaluated in-process.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "wgl/wgl.hpp"

using namespace wgl;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s - %s\n", idx, ok ? "PASS" : "FAIL",
              what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// trial-division oracles, shared with the unit suite in spirit but
// restated here so the gate stands alone
bool oracle_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

double oracle_lambda(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(double(p)) : 0.0;
  }
  return std::log(double(n));
}

bool close_rel(double a, double b, double rel, double abs_at_zero = 1e-10) {
  if (b == 0.0) return std::abs(a) <= abs_at_zero;
  return std::abs(a - b) <= rel * std::abs(b);
}

// ---------------------------------------------------------------------

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  auto big = build_prime_tables(10000000);
  double dt = seconds_since(t0);

  std::size_t count_1e6 = 0;
  for (std::uint64_t p : big.primes) {
    if (p > 1000000) break;
    ++count_1e6;
  }
  bool counts_ok = (count_1e6 == 78498);

  bool lambda_ok = true;
  for (std::uint64_t n = 0; n <= 100000 && lambda_ok; ++n)
    lambda_ok = (big.lambda[n] == oracle_lambda(n)) &&
                ((n >= 2 && big.is_prime(n)) == oracle_is_prime(n));

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "sieve: pi(1e6)=%zu, Lambda exact to 1e5: %s, build(1e7) "
                "%.2fs (limit 1s)",
                count_1e6, lambda_ok ? "yes" : "no", dt);
  report(1, counts_ok && lambda_ok && dt < 1.0, buf);
}

void criterion_2(const VonMangoldtTable& t) {
  auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t top = 10000;
  // oracle arrays once, then exhaustive triple loops per n
  std::vector<double> olam(top + 1);
  std::vector<std::uint64_t> oprimes, opows;
  for (std::uint64_t n = 0; n <= top; ++n) {
    olam[n] = oracle_lambda(n);
    if (n * n <= top) {
      if (oracle_is_prime(n)) oprimes.push_back(n);
      if (n >= 2 && olam[n] > 0.0) opows.push_back(n);
    }
  }
  bool ok = true;
  std::uint64_t first_bad = 0;
  for (std::uint64_t n = 2; n <= top && ok; ++n) {
    double r = 0.0;
    std::uint64_t rs = 0;
    for (std::uint64_t p2 : oprimes)
      for (std::uint64_t p3 : oprimes) {
        if (p2 * p2 + p3 * p3 + 2 > n) continue;
        std::uint64_t a = n - p2 * p2 - p3 * p3;
        if (oracle_is_prime(a)) {
          r += std::log(double(a)) * std::log(double(p2)) *
               std::log(double(p3));
          ++rs;
        }
      }
    double R = 0.0;
    for (std::uint64_t b : opows)
      for (std::uint64_t c : opows) {
        if (b * b + c * c + 2 > n) continue;
        R += olam[n - b * b - c * c] * olam[b] * olam[c];
      }
    ok = close_rel(count_r(n, t), r, 1e-12) &&
         (count_rstar(n, t) == rs) && close_rel(count_R(n, t), R, 1e-12);
    if (!ok) first_bad = n;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "representation counts vs exhaustive oracle, n <= 1e4%s, "
                "%.1fs (limit 30s)",
                ok ? "" : (" (first mismatch at n=" +
                           std::to_string(first_bad) + ")")
                              .c_str(),
                dt);
  report(2, ok && dt < 30.0, buf);
}

void criterion_3(const VonMangoldtTable& t) {
  auto t0 = std::chrono::steady_clock::now();
  auto s1 = truncation_cutoff(1, 1000, 1e-10);
  auto s2 = truncation_cutoff(2, 1000, 1e-10);
  std::mt19937_64 rng(1000003);
  std::vector<std::uint64_t> ns;
  for (int i = 0; i < 20; ++i) ns.push_back(2 + rng() % 1999);
  auto vals = reconstruct_R_many(ns, 1000, s1, s2, t, hardware_threads());
  bool ok = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double expect = count_R(ns[i], t);
    ok = ok && close_rel(vals[i], expect, 1e-8, 1e-10);
    worst = std::max(worst, expect == 0.0
                                ? std::abs(vals[i])
                                : std::abs(vals[i] - expect) /
                                      std::abs(expect));
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "Fourier reconstruction of 20 random counts, worst "
                "deviation %.2e, %.1fs (limit 120s)",
                worst, dt);
  report(3, ok && dt < 120.0, buf);
}

void criterion_4(const VonMangoldtTable& t) {
  auto spec = truncation_cutoff(1, 1000, 1e-10);
  double coeff = parseval_second_moment(1, spec, t);
  auto scheme = EquispacedScheme::for_bandwidth(spec.M);
  auto g = GridCache::instance().get(spec, scheme.nodes, t);
  double quad = parallel_sum(g->P, hardware_threads(),
                             [&](std::size_t j) {
                               return std::complex<double>(
                                   std::norm(g->values[j]), 0.0);
                             })
                    .real() /
                double(g->P);
  bool ok = close_rel(quad, coeff, 1e-9);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "second moment: quadrature %.12g vs coefficients %.12g",
                quad, coeff);
  report(4, ok, buf);
}

void criterion_5(const VonMangoldtTable& t) {
  auto s12 = truncation_cutoff(2, 1 << 12, 1e-6);
  double coeff12 = parseval_fourth_moment_s2(1 << 12, s12, t);
  double quad12 = fourth_moment_quadrature(1 << 12, s12, t,
                                           hardware_threads());
  bool eq = close_rel(quad12, coeff12, 1e-9);

  auto s16 = truncation_cutoff(2, 1 << 16, 1e-6);
  double coeff16 = parseval_fourth_moment_s2(1 << 16, s16, t);
  auto norm = [](double v, double N) {
    return v / (N * std::log(N) * std::log(N));
  };
  double ratio =
      norm(coeff16, double(1 << 16)) / norm(coeff12, double(1 << 12));
  bool growth = ratio > 0.25 && ratio < 4.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "fourth moment: quad/coeff gap %.2e, growth ratio %.3f in "
                "(0.25, 4)",
                std::abs(quad12 - coeff12) / coeff12, ratio);
  report(5, eq && growth, buf);
}

void criterion_6() {
  DyadicScheme s;
  s.threads = hardware_threads();
  bool ok = true;
  double worst = 0.0;
  for (double mu : {1.0, 2.0}) {
    std::vector<double> scaled;
    for (std::uint64_t n = 1000; n <= 32000; n *= 2)
      scaled.push_back(laplace_check(n, 1000, mu, s).scaled_err);
    // recorded fixture ceiling: mu=1 sits at 1/pi^2 ~ 0.1013, mu=2 under
    // 2.1e-5 across the ladder
    double cap = (mu == 1.0) ? 0.2 : 1e-3;
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < scaled.size() / 2 + 1; ++i)
      head = std::max(head, scaled[i]);
    for (double v : scaled) {
      ok = ok && v <= cap;
      worst = std::max(worst, v);
    }
    // no doubling trend along the ladder
    ok = ok && scaled.back() <= 2.0 * head + 1e-12;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "Laplace identity ladder: worst abs_err*n = %.3g, trend "
                "bounded",
                worst);
  report(6, ok, buf);
}

void criterion_7(const VonMangoldtTable& t) {
  auto zeros = load_zeros("data/zeros_100000.txt", 100000);
  bool ok = zeros.size() >= 100000;
  double band250[3] = {0, 0, 0};  // per ell, N index
  char detail[200];
  std::string msg;
  bool band_ok = true, tail_ok = true;
  for (unsigned ell : {1u, 2u}) {
    double bands[3];
    int i = 0;
    for (std::uint64_t N : {250ull, 500ull, 1000ull}) {
      double tb = zero_sum_tail_bound(FrequencyPoint(0.0), N, ell,
                                      zeros.gammas.back());
      tail_ok = tail_ok && tb < 0.1;
      auto spec = truncation_cutoff(ell, N, 1e-8);
      auto r = explicit_residual(FrequencyPoint(0.0), spec, t, zeros,
                                 100000);
      bands[i++] = std::abs(r);
    }
    for (double b : bands) band_ok = band_ok && b <= 5.0;
    band_ok = band_ok && bands[2] <= 3.0 * bands[0] + 1.0;
    (void)band250;
    std::snprintf(detail, sizeof detail, "%sell=%u:|res|=%.3f/%.3f/%.3f",
                  msg.empty() ? "" : " ", ell, bands[0], bands[1],
                  bands[2]);
    msg += detail;
  }
  report(7, ok && tail_ok && band_ok,
         "explicit formula residual bands (N=250/500/1000) " + msg);
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  auto t = build_prime_tables(1010000);
  auto r = interval_r_sum(1000000, 10000, t);
  double dt = seconds_since(t0);
  bool ok = r.ratio >= 0.8 && r.ratio <= 1.2 && dt < 300.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "short-interval average: ratio %.5f in [0.8, 1.2], %.1fs "
                "(limit 300s)",
                r.ratio, dt);
  report(8, ok, buf);
}

void criterion_9(const VonMangoldtTable& t) {
  auto t0 = std::chrono::steady_clock::now();
  auto s1 = truncation_cutoff(1, 1000, 1e-8);
  auto s2 = truncation_cutoff(2, 1000, 1e-8);
  DyadicScheme base;
  base.threads = hardware_threads();
  auto rep = decompose_I123(1000, 100, s1, s2, t, base);
  double expected = std::numbers::pi / (4.0 * std::exp(1.0)) * 100.0 * 1000.0;
  bool gap_ok = rep.max_rel_gap <= 1e-6;
  // recorded band: the H/N correction keeps I1 within 5% of pi*H*N/(4e)
  bool i1_ok = std::abs(rep.I1.real() - expected) <= 0.05 * expected &&
               std::abs(rep.I1.imag()) <= 1e-6 * expected;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "decomposition: gap %.2e (limit 1e-6), I1 %.1f vs %.1f, "
                "%.0fs",
                rep.max_rel_gap, rep.I1.real(), expected,
                seconds_since(t0));
  report(9, gap_ok && i1_ok && !rep.unreliable, buf);
}

bool same_bytes(const std::string& a, const std::string& b) {
  return read_text_file(a) == read_text_file(b);
}

void criterion_10(const std::string& cli) {
  const std::string outa = "build/acceptance_out/a";
  const std::string outb = "build/acceptance_out/b";
  fs::remove_all("build/acceptance_out");
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"sieve", "sieve --N 100000"},
      {"interval", "interval --N 100000 --H 1000"},
      {"scaling", "scaling --N 10000 --H 10,100,1000"},
      {"explicit",
       "explicit --N 1000 --ell 1 --zeros data/zeros_100000.txt --K 100000"},
      {"moments", "moments --N 1024 --eps 1e-8"},
      {"laplace", "laplace --N 1000 --mu 2"},
      {"reconstruct", "reconstruct --N 500 --n 3,10,500,997"},
      {"mean-square-st", "mean-square-st --N 1000 --ell 1 --H 1000"},
      {"l2-moment", "l2-moment --N 250 --ell 1 --xi 0.25 --eps 1e-6"},
      {"decompose", "decompose --N 200 --H 20 --eps 1e-7"},
  };
  bool ok = true;
  std::string bad;
  for (const auto& [name, args] : runs) {
    std::string ca = cli + " " + args + " --threads 1 --out " + outa +
                     " >/dev/null 2>&1";
    std::string cb =
        cli + " " + args + " --out " + outb + " >/dev/null 2>&1";
    if (std::system(ca.c_str()) != 0 || std::system(cb.c_str()) != 0) {
      ok = false;
      bad += " " + name + "(run failed)";
      continue;
    }
    std::string fa = outa + "/" + name + ".csv";
    std::string fb = outb + "/" + name + ".csv";
    if (!same_bytes(fa, fb)) {
      ok = false;
      bad += " " + name;
    }
  }
  report(10, ok,
         ok ? "byte-identical outputs across thread counts (10 commands)"
            : "thread-count dependent output:" + bad);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "build/tools/wgl";
  auto table = build_prime_tables(60000);

  criterion_1();
  criterion_2(table);
  criterion_3(table);
  criterion_4(table);
  criterion_5(table);
  criterion_6();
  criterion_7(table);
  criterion_8();
  criterion_9(table);
  criterion_10(cli);

  if (failures)
    std::printf("%d criterion(s) failed\n", failures);
  else
    std::printf("all 10 criteria passed\n");
  return failures ? 1 : 0;
}
