#pragma once

// Scene document assembly and its canonical JSON form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "datagarden/detail/format.hpp"
#include "datagarden/encoder.hpp"
#include "datagarden/error.hpp"
#include "datagarden/geometry.hpp"
#include "datagarden/layout.hpp"
#include "datagarden/mapping.hpp"
#include "datagarden/survey.hpp"

namespace datagarden {

inline constexpr std::string_view kSceneVersion = "datagarden-scene/1";

struct SceneMeta {
  std::string title;
  std::size_t entity_count = 0;
  std::vector<std::string> generated_from;
  /// Question declarations, so consumers of the scene alone can tell which
  /// questions are groupable and in what order.
  SurveySchema schema;

  bool operator==(const SceneMeta&) const = default;
};

struct SceneDocument {
  std::string version{kSceneVersion};
  Bounds bounds;
  std::vector<GardenEntity> entities;  // sorted by id
  Legend legend;
  SceneMeta meta;

  const GardenEntity* find(std::string_view id) const {
    auto it = std::lower_bound(entities.begin(), entities.end(), id,
                               [](const GardenEntity& e, std::string_view v) { return e.id < v; });
    return it != entities.end() && it->id == id ? &*it : nullptr;
  }

  LayoutResult positions() const {
    LayoutResult out;
    for (const auto& e : entities) out.positions.emplace(e.id, e.position);
    return out;
  }

  bool operator==(const SceneDocument&) const = default;
};

/// Places entities, sorts them by id and fills in entity_count.
inline SceneDocument assemble_scene(std::vector<GardenEntity> entities,
                                    const LayoutResult& layout, Legend legend,
                                    const Bounds& bounds, SceneMeta meta) {
  std::sort(entities.begin(), entities.end(),
            [](const GardenEntity& a, const GardenEntity& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < entities.size(); ++i) {
    auto& e = entities[i];
    if (i > 0 && entities[i - 1].id == e.id) throw InvalidArgument("duplicate id " + e.id);
    auto it = layout.positions.find(e.id);
    if (it == layout.positions.end()) throw InvalidArgument("entity " + e.id + " has no position");
    e.position = it->second;
  }
  meta.entity_count = entities.size();
  return {std::string(kSceneVersion), bounds, std::move(entities), std::move(legend),
          std::move(meta)};
}

using Json = nlohmann::json;

/// Compact JSON with object keys in byte order and numbers in shortest
/// round-trip form.
inline void write_canonical(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map keeps keys sorted
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write_canonical(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw InvalidArgument("non-finite number in document");
      out += detail::format_number(v);
      break;
    }
    default:
      out += j.dump(-1, ' ', false, Json::error_handler_t::strict);
  }
}

inline std::string canonical_dump(const Json& j) {
  std::string out;
  write_canonical(j, out);
  return out;
}

inline Json to_json(Vec3 p) { return Json::array({p.x, p.y, p.z}); }

inline Json to_json(const Hsl& c) { return {{"h", c.h}, {"s", c.s}, {"l", c.l}}; }

inline Json to_json(const Tooltip& t) {
  Json out = Json::array();
  for (const auto& [q, v] : t) out.push_back(Json::array({q, v}));
  return out;
}

inline Json to_json(const Question& q) {
  Json out = {{"name", q.name}, {"kind", kind_name(q.kind)}};
  if (q.is_discrete()) out["values"] = q.values;
  if (q.kind == QuestionKind::kNumeric) {
    out["lo"] = q.lo;
    out["hi"] = q.hi;
  }
  return out;
}

inline Json to_json(const Legend& legend) {
  Json entries = Json::array();
  for (const auto& e : legend.entries) {
    Json items = Json::array();
    for (const auto& it : e.items) {
      Json item = {{"input", it.input}, {"visual", it.visual}, {"count", it.count}};
      if (it.color) item["color"] = to_json(*it.color);
      items.push_back(std::move(item));
    }
    Json entry = {{"channel", channel_name(e.channel)}, {"question", e.question},
                  {"items", std::move(items)}};
    if (e.channel == Channel::kSatellites) entry["satellite"] = e.satellite;
    entries.push_back(std::move(entry));
  }
  return {{"entries", std::move(entries)}};
}

inline Json to_json(const GardenEntity& e) {
  Json satellites = Json::object();
  for (const auto& [name, n] : e.satellites) satellites[name] = n;
  return {{"id", e.id},
          {"archetype", e.archetype},
          {"position", to_json(e.position)},
          {"color", to_json(e.color)},
          {"satellites", std::move(satellites)},
          {"scale", e.scale},
          {"tooltip", to_json(e.tooltip)}};
}

inline Json to_json(const LayoutResult& layout) {
  Json out = Json::object();
  for (const auto& [id, p] : layout.positions) out[id] = to_json(p);
  return out;
}

inline Json to_json(const TransitionPlan& plan) {
  Json tracks = Json::array();
  for (const auto& t : plan.tracks) {
    tracks.push_back({{"id", t.id},
                      {"start", to_json(t.start)},
                      {"end", to_json(t.end)},
                      {"delay", t.delay},
                      {"duration", t.duration}});
  }
  return {{"easing", plan.easing}, {"tracks", std::move(tracks)}};
}

inline Json to_json(const SceneDocument& doc) {
  Json entities = Json::array();
  for (const auto& e : doc.entities) entities.push_back(to_json(e));
  Json questions = Json::array();
  for (const auto& q : doc.meta.schema.questions) questions.push_back(to_json(q));
  return {{"version", doc.version},
          {"bounds", {{"width", doc.bounds.width}, {"depth", doc.bounds.depth}}},
          {"entities", std::move(entities)},
          {"legend", to_json(doc.legend)},
          {"meta",
           {{"title", doc.meta.title},
            {"entity_count", doc.meta.entity_count},
            {"generated_from", doc.meta.generated_from},
            {"questions", std::move(questions)}}}};
}

inline std::string serialize_scene(const SceneDocument& doc) {
  return canonical_dump(to_json(doc));
}

namespace detail {

inline const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("invalid scene: expected object", 0, 0);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("invalid scene: missing field '") + key + "'", 0, 0);
  return *it;
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("invalid scene: ") + what + " must be a number", 0, 0);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string("invalid scene: ") + what + " not finite", 0, 0);
  return v;
}

inline std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    throw ParseError(std::string("invalid scene: ") + what + " must be a non-negative integer", 0, 0);
  }
  return j.get<std::size_t>();
}

inline std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string("invalid scene: ") + what + " must be a string", 0, 0);
  return j.get<std::string>();
}

inline Vec3 vec3_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("invalid scene: position must be [x,y,z]", 0, 0);
  return {number(j[0], "x"), number(j[1], "y"), number(j[2], "z")};
}

inline Hsl hsl_from(const Json& j) {
  return {number(field(j, "h"), "h"), number(field(j, "s"), "s"), number(field(j, "l"), "l")};
}

inline Question question_from(const Json& j) {
  Question q;
  q.name = text(field(j, "name"), "question name");
  auto kind = kind_from_name(text(field(j, "kind"), "question kind"));
  if (!kind) throw ParseError("invalid scene: unknown question kind", 0, 0);
  q.kind = *kind;
  if (q.is_discrete()) {
    for (const auto& v : field(j, "values")) q.values.push_back(text(v, "question value"));
  }
  if (q.kind == QuestionKind::kNumeric) {
    q.lo = number(field(j, "lo"), "lo");
    q.hi = number(field(j, "hi"), "hi");
  }
  return q;
}

inline Legend legend_from(const Json& j) {
  Legend legend;
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) throw ParseError("invalid scene: legend entries must be an array", 0, 0);
  for (const auto& e : entries) {
    LegendEntry entry;
    auto channel = channel_from_name(text(field(e, "channel"), "channel"));
    if (!channel) throw ParseError("invalid scene: unknown legend channel", 0, 0);
    entry.channel = *channel;
    entry.question = text(field(e, "question"), "legend question");
    if (entry.channel == Channel::kSatellites) entry.satellite = text(field(e, "satellite"), "satellite");
    for (const auto& it : field(e, "items")) {
      LegendItem item;
      item.input = text(field(it, "input"), "legend input");
      item.visual = text(field(it, "visual"), "legend visual");
      item.count = count(field(it, "count"), "legend count");
      if (it.contains("color")) item.color = hsl_from(it["color"]);
      entry.items.push_back(std::move(item));
    }
    legend.entries.push_back(std::move(entry));
  }
  return legend;
}

inline GardenEntity entity_from(const Json& j) {
  GardenEntity e;
  e.id = text(field(j, "id"), "id");
  e.archetype = text(field(j, "archetype"), "archetype");
  e.position = vec3_from(field(j, "position"));
  e.color = hsl_from(field(j, "color"));
  const Json& sats = field(j, "satellites");
  if (!sats.is_object()) throw ParseError("invalid scene: satellites must be an object", 0, 0);
  for (const auto& [name, n] : sats.items()) e.satellites[name] = count(n, "satellite count");
  e.scale = number(field(j, "scale"), "scale");
  for (const auto& pair : field(j, "tooltip")) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("invalid scene: tooltip pairs", 0, 0);
    e.tooltip.emplace_back(text(pair[0], "tooltip question"), text(pair[1], "tooltip value"));
  }
  return e;
}

}  // namespace detail

/// Reads a scene document, rejecting other versions and documents whose
/// entity_count or ids are inconsistent.
inline SceneDocument parse_scene(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 0, e.byte);
  }
  try {
    SceneDocument doc;
    doc.version = detail::text(detail::field(j, "version"), "version");
    if (doc.version != kSceneVersion) throw ParseError("unsupported version " + doc.version, 0, 0);
    const Json& bounds = detail::field(j, "bounds");
    doc.bounds = {detail::number(detail::field(bounds, "width"), "width"),
                  detail::number(detail::field(bounds, "depth"), "depth")};
    const Json& entities = detail::field(j, "entities");
    if (!entities.is_array()) throw ParseError("invalid scene: entities must be an array", 0, 0);
    std::set<std::string> ids;
    for (const auto& e : entities) {
      doc.entities.push_back(detail::entity_from(e));
      if (!ids.insert(doc.entities.back().id).second) {
        throw ParseError("duplicate id " + doc.entities.back().id, 0, 0);
      }
    }
    doc.legend = detail::legend_from(detail::field(j, "legend"));
    const Json& meta = detail::field(j, "meta");
    doc.meta.title = detail::text(detail::field(meta, "title"), "title");
    doc.meta.entity_count = detail::count(detail::field(meta, "entity_count"), "entity_count");
    for (const auto& f : detail::field(meta, "generated_from")) {
      doc.meta.generated_from.push_back(detail::text(f, "generated_from"));
    }
    for (const auto& q : detail::field(meta, "questions")) {
      doc.meta.schema.questions.push_back(detail::question_from(q));
    }
    if (doc.meta.entity_count != doc.entities.size()) {
      throw ParseError("count mismatch: entity_count " + std::to_string(doc.meta.entity_count) +
                           " but " + std::to_string(doc.entities.size()) + " entities",
                       0, 0);
    }
    std::sort(doc.entities.begin(), doc.entities.end(),
              [](const GardenEntity& a, const GardenEntity& b) { return a.id < b.id; });
    return doc;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid scene: ") + e.what(), 0, 0);
  }
}

}  // namespace datagarden
