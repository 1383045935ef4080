#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "wgl/errors.hpp"
#include "wgl/summation.hpp"

namespace wgl {

// Per-integer von Mangoldt values and primality flags up to `limit`.
// Lambda(n) = log p when n = p^j, 0 otherwise (natural log).  Immutable
// after construction; safe for concurrent reads.
struct VonMangoldtTable {
  std::uint64_t limit = 0;
  std::vector<double> lambda;        // index 0..limit
  std::vector<std::uint64_t> bits;   // primality bitset, bit n of word n/64
  std::vector<std::uint64_t> primes;

  bool is_prime(std::uint64_t n) const {
    if (n > limit) throw parameter_error("is_prime: n exceeds table limit");
    return (bits[n >> 6] >> (n & 63)) & 1u;
  }
  double lam(std::uint64_t n) const { return lambda[n]; }
};

namespace detail {

inline void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t n) {
  bits[n >> 6] |= std::uint64_t(1) << (n & 63);
}
inline void clear_bit(std::vector<std::uint64_t>& bits, std::uint64_t n) {
  bits[n >> 6] &= ~(std::uint64_t(1) << (n & 63));
}
inline bool get_bit(const std::vector<std::uint64_t>& bits, std::uint64_t n) {
  return (bits[n >> 6] >> (n & 63)) & 1u;
}

// prime powers q <= bound with Lambda(q) > 0, ascending
inline std::vector<std::uint64_t> lambda_support(const VonMangoldtTable& t,
                                                 std::uint64_t bound) {
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 2; q <= bound && q <= t.limit; ++q)
    if (t.lambda[q] > 0.0) qs.push_back(q);
  return qs;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(double(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

struct SieveOptions {
  std::uint64_t segment_size = std::uint64_t(1) << 22;  // cache-resident
  unsigned threads = 0;                                 // 0 = auto
  std::uint64_t memory_ceiling_bytes = std::uint64_t(16) << 30;
};

// Segmented sieve of Eratosthenes producing primality bits, Lambda values
// and the prime list.  Content is independent of segment size and thread
// count: every array slot is written from (p, j) alone.
inline VonMangoldtTable build_prime_tables(std::uint64_t limit,
                                           SieveOptions opt = {}) {
  if (limit < 2) throw parameter_error("build_prime_tables: limit must be >= 2");
  if (limit > (std::uint64_t(1) << 34))
    throw parameter_error("build_prime_tables: limit above 2^34 ceiling");
  const std::uint64_t bytes = (limit + 1) * 8 + (limit / 8 + 16);
  if (bytes > opt.memory_ceiling_bytes)
    throw resource_error(
        "build_prime_tables: memory budget exceeded; lower the limit or "
        "raise the ceiling (advisory segment size " +
        std::to_string(opt.segment_size) + ")");

  VonMangoldtTable t;
  t.limit = limit;
  t.lambda.assign(limit + 1, 0.0);
  t.bits.assign(limit / 64 + 1, 0);

  // base primes up to sqrt(limit) by a plain sieve
  const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(double(limit))) + 1;
  std::vector<bool> base(root + 1, true);
  base[0] = base[1] = false;
  for (std::uint64_t p = 2; p * p <= root; ++p)
    if (base[p])
      for (std::uint64_t q = p * p; q <= root; q += p) base[q] = false;
  std::vector<std::uint64_t> base_primes;
  for (std::uint64_t p = 2; p <= root; ++p)
    if (base[p]) base_primes.push_back(p);

  // segments are disjoint 64-bit-word-aligned ranges, so parallel marking
  // never touches the same word from two threads
  const std::uint64_t seg =
      std::max<std::uint64_t>(64, opt.segment_size & ~std::uint64_t(63));
  const std::size_t nseg = static_cast<std::size_t>((limit + seg) / seg);
  unsigned threads = opt.threads ? opt.threads : hardware_threads();

  parallel_blocks<int>(nseg, 1, threads, [&](std::size_t b, std::size_t) {
    const std::uint64_t lo = b * seg;
    const std::uint64_t hi = std::min(limit + 1, lo + seg);
    if (hi <= lo) return 0;
    // mark everything prime, then cross out
    for (std::uint64_t n = lo; n < hi; ++n) detail::set_bit(t.bits, n);
    if (lo == 0) {
      detail::clear_bit(t.bits, 0);
      if (limit >= 1) detail::clear_bit(t.bits, 1);
    }
    for (std::uint64_t p : base_primes) {
      if (p * p >= hi) break;
      std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (std::uint64_t q = start; q < hi; q += p)
        detail::clear_bit(t.bits, q);
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
      if (detail::get_bit(t.bits, n))
        t.lambda[n] = std::log(double(n));
    return 0;
  });

  // prime powers p^j, j >= 2 (all p <= sqrt(limit))
  for (std::uint64_t p : base_primes) {
    if (p * p > limit) break;
    double lp = std::log(double(p));
    for (std::uint64_t q = p * p; q <= limit; q *= p) {
      t.lambda[q] = lp;
      if (q > limit / p) break;
    }
  }

  t.primes.reserve(static_cast<std::size_t>(
      limit > 16 ? double(limit) / (std::log(double(limit)) - 1.1) + 64 : 8));
  for (std::uint64_t n = 2; n <= limit; ++n)
    if (detail::get_bit(t.bits, n)) t.primes.push_back(n);
  return t;
}

// Binary cache: magic "WGL1", version u32, limit u64, bit-packed
// primality, raw 8-byte little-endian Lambda values.
inline constexpr std::uint32_t kTableCacheVersion = 1;

inline void save_table(const VonMangoldtTable& t, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw resource_error("save_table: cannot open " + path);
  std::fwrite("WGL1", 1, 4, f);
  std::uint32_t version = kTableCacheVersion;
  std::fwrite(&version, sizeof version, 1, f);
  std::fwrite(&t.limit, sizeof t.limit, 1, f);
  std::fwrite(t.bits.data(), sizeof(std::uint64_t), t.bits.size(), f);
  std::fwrite(t.lambda.data(), sizeof(double), t.lambda.size(), f);
  if (std::fclose(f) != 0) throw resource_error("save_table: write failed");
}

inline VonMangoldtTable load_table(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw resource_error("load_table: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  VonMangoldtTable t;
  bool ok = std::fread(magic, 1, 4, f) == 4 &&
            std::memcmp(magic, "WGL1", 4) == 0 &&
            std::fread(&version, sizeof version, 1, f) == 1 &&
            version == kTableCacheVersion &&
            std::fread(&t.limit, sizeof t.limit, 1, f) == 1 && t.limit >= 2;
  if (ok) {
    t.bits.resize(t.limit / 64 + 1);
    t.lambda.resize(t.limit + 1);
    ok = std::fread(t.bits.data(), sizeof(std::uint64_t), t.bits.size(), f) ==
             t.bits.size() &&
         std::fread(t.lambda.data(), sizeof(double), t.lambda.size(), f) ==
             t.lambda.size();
  }
  std::fclose(f);
  if (!ok) throw data_error("load_table: corrupt or mismatched cache " + path);
  for (std::uint64_t n = 2; n <= t.limit; ++n)
    if (detail::get_bit(t.bits, n)) t.primes.push_back(n);
  return t;
}

}  // namespace wgl
