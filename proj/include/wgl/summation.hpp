#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace wgl {

// Neumaier compensated accumulator.  Long coefficient sums (up to ~1e7
// terms) have to be reproducible to ~1e-13, which naive summation does
// not deliver.
class Accumulator {
public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexAccumulator {
public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  Accumulator re_;
  Accumulator im_;
};

inline unsigned hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Deterministic parallel map-reduce over [0, n): the index range is cut
// into fixed-size blocks independent of the thread count, each block is
// reduced on its own, and block results are combined in block order.
// Identical results for any thread count.
template <typename Result, typename BlockFn>
std::vector<Result> parallel_blocks(std::size_t n, std::size_t block_size,
                                    unsigned threads, BlockFn&& fn) {
  if (block_size == 0) block_size = 1;
  const std::size_t nblocks = (n + block_size - 1) / block_size;
  std::vector<Result> results(nblocks);
  auto run = [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      std::size_t lo = b * block_size;
      std::size_t hi = std::min(n, lo + block_size);
      results[b] = fn(lo, hi);
    }
  };
  if (threads <= 1 || nblocks <= 1) {
    run(0, nblocks);
    return results;
  }
  std::vector<std::thread> pool;
  std::size_t per = (nblocks + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b0 = t * per, b1 = std::min(nblocks, b0 + per);
    if (b0 >= b1) break;
    pool.emplace_back(run, b0, b1);
  }
  for (auto& th : pool) th.join();
  return results;
}

// Sum f(i) over [0, n) deterministically, optionally in parallel.
template <typename Fn>
std::complex<double> parallel_sum(std::size_t n, unsigned threads, Fn&& f,
                                  std::size_t block_size = 1 << 14) {
  auto blocks = parallel_blocks<std::complex<double>>(
      n, block_size, threads, [&](std::size_t lo, std::size_t hi) {
        ComplexAccumulator acc;
        for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
        return acc.value();
      });
  ComplexAccumulator total;
  for (auto v : blocks) total.add(v);
  return total.value();
}

}  // namespace wgl
