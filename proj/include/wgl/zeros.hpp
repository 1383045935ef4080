#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "wgl/digest.hpp"
#include "wgl/errors.hpp"

namespace wgl {

// Ordered positive imaginary parts of nontrivial zeta zeros.  Under RH
// the zeros themselves are 1/2 + i*gamma; conjugates are generated on
// the fly and never stored.
struct ZeroSet {
  std::vector<double> gammas;  // strictly ascending, all > 14
  std::string source_digest;

  std::size_t size() const { return gammas.size(); }
};

namespace detail {

// decimal fixed-point with at least `min_frac` fractional digits;
// scientific notation rejected
inline bool valid_zero_token(const std::string& s, int min_frac) {
  std::size_t i = 0;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    return false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || s[i] != '.') return false;
  ++i;
  int frac = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++frac;
  }
  return i == s.size() && frac >= min_frac;
}

}  // namespace detail

// Plain-text loader: one gamma per line, ascending, >= 9 decimal digits,
// blank lines and trailing whitespace tolerated.
inline ZeroSet load_zeros(const std::string& path, std::size_t max_count) {
  std::ifstream in(path);
  if (!in) throw data_error("load_zeros: cannot open " + path);

  ZeroSet zs;
  zs.source_digest = file_digest(path);
  std::string line;
  std::size_t lineno = 0;
  double prev = 0.0;
  while (zs.gammas.size() < max_count && std::getline(in, line)) {
    ++lineno;
    while (!line.empty() &&
           std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() &&
           std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    std::string tok = line.substr(start);
    if (tok.empty()) continue;
    if (!detail::valid_zero_token(tok, 9))
      throw format_error("load_zeros: malformed zero '" + tok + "'", lineno);
    double g = std::stod(tok);
    if (g <= prev)
      throw format_error("load_zeros: zeros not strictly ascending", lineno);
    if (g <= 14.0)
      throw format_error("load_zeros: gamma must exceed 14", lineno);
    zs.gammas.push_back(g);
    prev = g;
  }
  if (zs.gammas.empty()) throw data_error("load_zeros: no zeros in " + path);
  if (std::abs(zs.gammas.front() - 14.134725141) > 1e-6)
    throw data_error("load_zeros: first zero fails the ingestion gate");
  return zs;
}

}  // namespace wgl
