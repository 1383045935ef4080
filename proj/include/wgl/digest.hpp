#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "wgl/errors.hpp"

namespace wgl {

// FNV-1a 64-bit; stable across platforms, good enough for cache keys and
// manifest digests (not cryptographic).
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex_digest(std::uint64_t h) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = d[h & 0xf];
    h >>= 4;
  }
  return s;
}

inline std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("file_digest: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex_digest(fnv1a64(ss.str()));
}

}  // namespace wgl
