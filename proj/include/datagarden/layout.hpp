#pragma once

// Ground-plane placement: organic scatter, grouped grid, and the staggered
// transition between two placements.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "datagarden/encoder.hpp"
#include "datagarden/error.hpp"
#include "datagarden/geometry.hpp"
#include "datagarden/survey.hpp"

namespace datagarden {

struct LayoutResult {
  std::map<std::string, Vec3> positions;

  bool operator==(const LayoutResult&) const = default;
};

/// Consecutive rejected candidates before organic placement gives up.
inline constexpr std::size_t kMaxConsecutiveRejections = 1000;

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw. Used
/// instead of std::uniform_real_distribution, whose output is not pinned
/// down by the standard.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Buckets accepted points into cells at least min_sep wide so each
/// candidate only checks its 3x3 neighbourhood.
class SpacingGrid {
 public:
  SpacingGrid(const Bounds& bounds, double cell)
      : cell_(cell),
        cols_(static_cast<std::size_t>(std::floor(bounds.width / cell)) + 1),
        rows_(static_cast<std::size_t>(std::floor(bounds.depth / cell)) + 1),
        cells_(cols_ * rows_) {}

  bool is_clear(Vec3 p, double min_sep) const {
    const auto [cx, cz] = cell_of(p);
    const double min_sq = min_sep * min_sep;
    for (std::size_t z = cz ? cz - 1 : 0; z <= std::min(cz + 1, rows_ - 1); ++z) {
      for (std::size_t x = cx ? cx - 1 : 0; x <= std::min(cx + 1, cols_ - 1); ++x) {
        for (const Vec3& q : cells_[z * cols_ + x]) {
          const double dx = p.x - q.x, dz = p.z - q.z;
          if (dx * dx + dz * dz < min_sq) return false;
        }
      }
    }
    return true;
  }

  void insert(Vec3 p) {
    const auto [cx, cz] = cell_of(p);
    cells_[cz * cols_ + cx].push_back(p);
  }

 private:
  std::pair<std::size_t, std::size_t> cell_of(Vec3 p) const {
    auto clamp_index = [](double v, std::size_t n) {
      return std::min(static_cast<std::size_t>(std::max(v, 0.0)), n - 1);
    };
    return {clamp_index(p.x / cell_, cols_), clamp_index(p.z / cell_, rows_)};
  }

  double cell_;
  std::size_t cols_;
  std::size_t rows_;
  std::vector<std::vector<Vec3>> cells_;
};

}  // namespace detail

/// Seeded dart throwing. Candidates are uniform over the bounds, drawn from
/// std::mt19937_64 seeded with `seed`; a candidate closer than `min_sep` to
/// an accepted point is rejected. Ids are placed in the order given. Throws
/// CapacityError after kMaxConsecutiveRejections rejections in a row.
inline LayoutResult organic_layout(std::span<const std::string> ids, const Bounds& bounds,
                                   double min_sep, std::uint64_t seed) {
  if (!(bounds.width > 0.0) || !(bounds.depth > 0.0)) {
    throw InvalidArgument("bounds must be positive");
  }
  if (!(min_sep > 0.0) || !std::isfinite(min_sep)) {
    throw InvalidArgument("min_sep must be positive");
  }
  LayoutResult result;
  if (ids.empty()) return result;

  std::mt19937_64 rng(seed);
  detail::SpacingGrid grid(bounds, std::max(min_sep, std::max(bounds.width, bounds.depth) / 2048.0));
  std::size_t placed = 0;
  for (const auto& id : ids) {
    if (result.positions.count(id)) throw InvalidArgument("duplicate entity id " + id);
    std::size_t rejections = 0;
    for (;;) {
      const Vec3 p{detail::unit_double(rng) * bounds.width, 0.0,
                   detail::unit_double(rng) * bounds.depth};
      if (grid.is_clear(p, min_sep)) {
        grid.insert(p);
        result.positions.emplace(id, p);
        ++placed;
        break;
      }
      if (++rejections >= kMaxConsecutiveRejections) {
        throw CapacityError(placed, ids.size());
      }
    }
  }
  return result;
}

namespace detail {

inline const std::string* tooltip_value(const GardenEntity& e, const std::string& question) {
  for (const auto& [q, v] : e.tooltip)
    if (q == question) return &v;
  return nullptr;
}

}  // namespace detail

/// Axis-aligned grid per group. Groups follow the question's declared value
/// order along x, separated by a gap of two cells; entities without a
/// declared answer form one extra group at the end. Inside a group,
/// members sorted by id fill ceil(sqrt(n)) columns row by row.
inline LayoutResult grouped_layout(std::span<const GardenEntity> entities,
                                   const std::string& group_question,
                                   const SurveySchema& schema, double spacing) {
  const Question* q = schema.find(group_question);
  if (!q) throw InvalidArgument("unknown question " + group_question);
  if (!q->is_discrete()) {
    throw InvalidArgument("question " + group_question + " is " + kind_name(q->kind) +
                          ", not groupable");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("spacing must be positive");
  }

  std::vector<std::vector<std::string>> groups(q->values.size() + 1);
  std::set<std::string> seen;
  for (const auto& e : entities) {
    if (!seen.insert(e.id).second) throw InvalidArgument("duplicate entity id " + e.id);
    const std::string* v = detail::tooltip_value(e, group_question);
    auto idx = v ? q->index_of(*v) : std::nullopt;
    groups[idx.value_or(q->values.size())].push_back(e.id);
  }

  LayoutResult result;
  double offset = 0.0;
  bool first = true;
  for (auto& members : groups) {
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    const std::size_t n = members.size();
    auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (cols * cols < n) ++cols;
    while (cols > 1 && (cols - 1) * (cols - 1) >= n) --cols;
    if (!first) offset += 2.0 * spacing;
    first = false;
    for (std::size_t m = 0; m < n; ++m) {
      const auto col = static_cast<double>(m % cols);
      const auto row = static_cast<double>(m / cols);
      result.positions.emplace(members[m], Vec3{offset + col * spacing, 0.0, row * spacing});
    }
    offset += static_cast<double>(cols - 1) * spacing;
  }
  return result;
}

/// 3t^2 - 2t^3 on [0, 1], clamped outside.
inline double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

struct TransitionTrack {
  std::string id;
  Vec3 start;
  Vec3 end;
  double delay = 0.0;
  double duration = 0.0;

  /// Position `t` seconds after the transition began.
  Vec3 position_at(double t) const {
    if (t <= delay) return start;
    if (t >= delay + duration) return end;
    return start + smoothstep((t - delay) / duration) * (end - start);
  }

  bool operator==(const TransitionTrack&) const = default;
};

struct TransitionPlan {
  std::string easing = "smoothstep";
  std::vector<TransitionTrack> tracks;  // sorted by id

  bool operator==(const TransitionPlan&) const = default;
};

/// Tracks are ordered by id; the k-th track starts after k * stagger
/// seconds and every track lasts `duration`.
inline TransitionPlan plan_transition(const LayoutResult& from, const LayoutResult& to,
                                      double duration, double stagger) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw InvalidArgument("duration must be positive");
  }
  if (!(stagger >= 0.0) || !std::isfinite(stagger)) {
    throw InvalidArgument("stagger must be non-negative");
  }
  if (from.positions.size() != to.positions.size()) {
    throw InvalidArgument("layouts cover different entity sets");
  }
  TransitionPlan plan;
  plan.tracks.reserve(from.positions.size());
  std::size_t rank = 0;
  auto it = to.positions.begin();
  for (const auto& [id, start] : from.positions) {
    if (it->first != id) throw InvalidArgument("layouts cover different entity sets");
    plan.tracks.push_back({id, start, it->second, stagger * static_cast<double>(rank), duration});
    ++rank;
    ++it;
  }
  return plan;
}

}  // namespace datagarden
