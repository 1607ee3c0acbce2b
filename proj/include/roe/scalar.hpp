#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace roe {

/// The extended value used for coarse disjointness. IEEE arithmetic gives the
/// rules we need: inf + a = inf, min(inf, a) = a, finite / inf = 0.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest round-trip decimal; the token "inf" for the infinite value.
inline std::string format_scalar(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Parses a decimal or the token "inf"; the whole token must be consumed.
/// Rejects NaN.
inline bool parse_scalar(std::string_view text, double& out) {
  if (text == "inf") {
    out = kInf;
    return true;
  }
  if (text == "-inf") {
    out = -kInf;
    return true;
  }
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return false;
  return !std::isnan(out);
}

}  // namespace roe
