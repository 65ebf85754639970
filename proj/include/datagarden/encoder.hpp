#pragma once

// Turns response records into garden entities.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "datagarden/channels.hpp"
#include "datagarden/error.hpp"
#include "datagarden/geometry.hpp"
#include "datagarden/mapping.hpp"
#include "datagarden/survey.hpp"

namespace datagarden {

using Tooltip = std::vector<std::pair<std::string, std::string>>;

/// One respondent as it appears in the garden.
struct GardenEntity {
  std::string id;
  std::string archetype;
  Hsl color = kMissingColor;
  std::map<std::string, std::size_t> satellites;
  double scale = 1.0;
  Tooltip tooltip;
  Vec3 position;  // assigned by layout; origin until then

  bool operator==(const GardenEntity&) const = default;
};

/// Non-missing answers in schema order, formatted for display.
inline Tooltip tooltip_for(const ResponseRecord& record, const SurveySchema& schema) {
  Tooltip out;
  for (const auto& q : schema.questions) {
    const Value& v = record.get(q.name);
    if (!is_missing(v)) out.emplace_back(q.name, display_value(v));
  }
  return out;
}

inline Tooltip tooltip_payload(const std::string& entity_id,
                               const std::vector<ResponseRecord>& records,
                               const SurveySchema& schema) {
  for (const auto& r : records)
    if (r.id == entity_id) return tooltip_for(r, schema);
  throw InvalidArgument("no such entity: " + entity_id);
}

namespace detail {

inline const Question& bound_question(const ChannelBinding& b, const SurveySchema& schema) {
  const Question* q = schema.find(b.question);
  if (!q) throw InvalidArgument("unknown question " + b.question);
  if (!channel_accepts(b.channel, q->kind)) {
    throw InvalidArgument("incompatible kind for " + b.identity() + ": " + q->name);
  }
  return *q;
}

inline std::string resolve_archetype(const ChannelBinding& b, const Question& q,
                                     const ResponseRecord& r) {
  const Value& v = r.get(q.name);
  if (const auto* s = std::get_if<std::string>(&v)) {
    for (const auto& arm : b.arms)
      if (arm.input == *s) return arm.model;
  }
  if (const ArchetypeArm* d = b.default_arm()) return d->model;
  if (is_missing(v)) {
    throw InvalidArgument("record " + r.id + ", question " + q.name +
                          ": missing answer and no default arm");
  }
  throw InvalidArgument("record " + r.id + ", question " + q.name + ": value '" +
                        display_value(v) + "' matches no arm and no default arm");
}

}  // namespace detail

/// Applies `spec` to every record, preserving order. Missing answers fall
/// back per channel: satellites to 0, scale to the middle of its range,
/// color to neutral gray; archetype uses the default arm.
inline std::vector<GardenEntity> encode(const std::vector<ResponseRecord>& records,
                                        const MappingSpec& spec,
                                        const SurveySchema& schema) {
  std::vector<GardenEntity> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    GardenEntity e;
    e.id = r.id;
    for (const auto& b : spec.bindings) {
      const Question& q = detail::bound_question(b, schema);
      switch (b.channel) {
        case Channel::kArchetype:
          e.archetype = detail::resolve_archetype(b, q, r);
          break;
        case Channel::kColor: {
          const auto* s = std::get_if<std::string>(&r.get(q.name));
          e.color = s ? palette_color(*s, q.values) : kMissingColor;
          break;
        }
        case Channel::kSatellites: {
          auto x = numeric_value(q, r.get(q.name));
          e.satellites[b.satellite] = x ? satellite_count(*x, b.thresholds) : 0;
          break;
        }
        case Channel::kScale: {
          auto x = numeric_value(q, r.get(q.name));
          if (x) {
            auto [lo, hi] = numeric_domain(q);
            e.scale = scale_value(*x, lo, hi, b.range_lo, b.range_hi);
          } else {
            e.scale = b.range_lo + (b.range_hi - b.range_lo) / 2.0;
          }
          break;
        }
      }
    }
    e.tooltip = tooltip_for(r, schema);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace datagarden
