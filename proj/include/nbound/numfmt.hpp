#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace nbound {

// Locale-independent number formatting shared by the report writers.

/// Shortest representation that round-trips.
inline std::string format_shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

/// `digits` significant digits, %g style.
inline std::string format_sig(double x, int digits = 6) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                           std::chars_format::general, digits);
  return std::string(buf.data(), res.ptr);
}

}  // namespace nbound
