#pragma once

// Value-to-visual rules shared by the encoder and the legend.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "datagarden/detail/format.hpp"
#include "datagarden/error.hpp"

namespace datagarden {

/// Hue in degrees [0, 360), saturation and lightness in percent.
struct Hsl {
  double h = 0.0;
  double s = 0.0;
  double l = 0.0;

  bool operator==(const Hsl&) const = default;
};

inline std::string to_css(const Hsl& c) {
  return "hsl(" + detail::format_number(c.h) + "," + detail::format_number(c.s) +
         "%," + detail::format_number(c.l) + "%)";
}

inline constexpr double kPaletteSaturation = 70.0;
inline constexpr double kPaletteLightness = 50.0;

/// Tint for entities whose color answer is missing.
inline constexpr Hsl kMissingColor{0.0, 0.0, 50.0};

/// Evenly spaced hues over the categories in lexicographic order:
/// hue = 360 * index / k. Duplicates in `categories` are ignored.
inline Hsl palette_color(const std::string& category,
                         std::span<const std::string> categories) {
  std::vector<std::string> sorted(categories.begin(), categories.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto it = std::lower_bound(sorted.begin(), sorted.end(), category);
  if (it == sorted.end() || *it != category) {
    throw InvalidArgument("category '" + category + "' not in palette");
  }
  const auto index = static_cast<double>(it - sorted.begin());
  const auto k = static_cast<double>(sorted.size());
  return {360.0 * index / k, kPaletteSaturation, kPaletteLightness};
}

/// Number of thresholds that are <= v.
inline std::size_t satellite_count(double v, std::span<const double> thresholds) {
  return static_cast<std::size_t>(
      std::upper_bound(thresholds.begin(), thresholds.end(), v) - thresholds.begin());
}

/// Linear map of v from [lo, hi] onto [a, b], clamped to [a, b]. A
/// degenerate input domain maps everything to the midpoint.
inline double scale_value(double v, double lo, double hi, double a, double b) {
  if (!(hi > lo)) return a + (b - a) / 2.0;
  const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  return std::clamp(a + t * (b - a), std::min(a, b), std::max(a, b));
}

}  // namespace datagarden
