#pragma once

#include <fftw3.h>

#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wgl/digest.hpp"
#include "wgl/errors.hpp"
#include "wgl/exp_sums.hpp"
#include "wgl/quadrature.hpp"

namespace wgl {

// Values of a truncated damped series on the equispaced grid
// alpha_j = -1/2 + j/P.  Built with one backward FFT of the coefficient
// array (the grid is a plain DFT of the e^{-n^ell/N}-damped Lambda
// coefficients), so a full grid costs O(P log P) regardless of M.
struct SeriesGrid {
  TruncatedSeriesSpec spec;
  std::size_t P = 0;
  std::vector<std::complex<double>> values;

  double alpha(std::size_t j) const { return -0.5 + double(j) / double(P); }
};

namespace detail {

inline std::string grid_key(const TruncatedSeriesSpec& spec, std::size_t P) {
  return "ell=" + std::to_string(spec.ell) + ";N=" + std::to_string(spec.N) +
         ";M=" + std::to_string(spec.M) + ";P=" + std::to_string(P);
}

inline std::vector<std::complex<double>> dft_grid(
    std::vector<std::complex<double>>& coeff) {
  static std::mutex plan_mu;  // FFTW planning is not thread-safe
  const std::size_t P = coeff.size();
  std::vector<std::complex<double>> out(P);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mu);
    plan = fftw_plan_dft_1d(static_cast<int>(P),
                            reinterpret_cast<fftw_complex*>(coeff.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mu);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace detail

// Process-wide grid cache; optional spill to a content-addressed
// directory so repeated CLI runs skip the FFT.
class GridCache {
public:
  static GridCache& instance() {
    static GridCache c;
    return c;
  }

  void set_directory(std::string dir) {
    std::lock_guard<std::mutex> lock(mu_);
    dir_ = std::move(dir);
  }

  std::shared_ptr<const SeriesGrid> get(const TruncatedSeriesSpec& spec,
                                        std::size_t P,
                                        const VonMangoldtTable& table) {
    const std::string key = detail::grid_key(spec, P);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = mem_.find(key);
      if (it != mem_.end()) return it->second;
    }
    auto grid = std::make_shared<SeriesGrid>(load_or_build(spec, P, table, key));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = mem_.emplace(key, grid);
    return it->second;
  }

private:
  SeriesGrid load_or_build(const TruncatedSeriesSpec& spec, std::size_t P,
                           const VonMangoldtTable& table,
                           const std::string& key) {
    std::string path;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (!dir_.empty())
        path = dir_ + "/grid_" + hex_digest(fnv1a64(key)) + ".bin";
    }
    SeriesGrid g;
    if (!path.empty() && load_file(path, P, g)) {
      g.spec = spec;
      g.P = P;
      return g;
    }
    g = build(spec, P, table);
    if (!path.empty()) save_file(path, g);
    return g;
  }

  static SeriesGrid build(const TruncatedSeriesSpec& spec, std::size_t P,
                          const VonMangoldtTable& table) {
    if (table.limit < spec.M)
      throw parameter_error("SeriesGrid: table too small for cutoff");
    if (detail::ipow(spec.M, spec.ell) >= P)
      throw parameter_error("SeriesGrid: P must exceed the top frequency");
    std::vector<std::complex<double>> coeff(P, {0.0, 0.0});
    for (std::uint64_t n = 2; n <= spec.M; ++n) {
      double lam = table.lambda[n];
      if (lam == 0.0) continue;
      std::uint64_t k = detail::ipow(n, spec.ell);
      double c = lam * std::exp(-double(k) / double(spec.N));
      // the grid starts at alpha = -1/2, which contributes (-1)^k
      coeff[k] += (k & 1) ? -c : c;
    }
    SeriesGrid g;
    g.spec = spec;
    g.P = P;
    g.values = detail::dft_grid(coeff);
    return g;
  }

  static bool load_file(const std::string& path, std::size_t P,
                        SeriesGrid& g) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    std::uint64_t stored = 0;
    bool ok = std::fread(&stored, sizeof stored, 1, f) == 1 && stored == P;
    if (ok) {
      g.values.resize(P);
      ok = std::fread(g.values.data(), sizeof(std::complex<double>), P, f) ==
           P;
    }
    std::fclose(f);
    return ok;
  }

  static void save_file(const std::string& path, const SeriesGrid& g) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return;  // cache miss is not an error
    std::uint64_t P = g.P;
    std::fwrite(&P, sizeof P, 1, f);
    std::fwrite(g.values.data(), sizeof(std::complex<double>), g.P, f);
    std::fclose(f);
  }

  std::mutex mu_;
  std::string dir_;
  std::map<std::string, std::shared_ptr<const SeriesGrid>> mem_;
};

}  // namespace wgl
