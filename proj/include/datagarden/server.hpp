#pragma once

// Read-only HTTP service over one immutable scene.
//
//   GET  /healthz           {"status":"ok"}
//   GET  /api/scene         canonical scene document
//   GET  /api/legend        legend subtree of the scene
//   GET  /api/entity/{id}   {"id":..,"tooltip":[[question,answer],...]} or 404
//   POST /api/layout        {"positions":{..},"transition":{..}}
//   GET  /{path}            static viewer assets when a static dir is set

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "datagarden/error.hpp"
#include "datagarden/layout.hpp"
#include "datagarden/scene.hpp"

namespace datagarden {

inline constexpr int kDefaultPort = 8080;

struct LayoutRequest {
  enum class Mode { kOrganic, kGrouped };

  Mode mode = Mode::kOrganic;
  std::optional<std::string> group_by;
  double spacing = 2.0;  // grid pitch; minimum separation in organic mode
  std::uint64_t seed = 42;
  double duration = 1.5;
  double stagger = 0.01;
};

/// Structural decoding only: throws ParseError when the body is not a JSON
/// object with correctly typed fields. Semantic checks happen in
/// SceneService::layout.
inline LayoutRequest parse_layout_request(std::string_view body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 0, e.byte);
  }
  if (!j.is_object()) throw ParseError("request body must be an object", 0, 0);

  LayoutRequest req;
  auto mode = j.find("mode");
  if (mode == j.end() || !mode->is_string()) throw ParseError("'mode' must be a string", 0, 0);
  if (*mode == "organic") {
    req.mode = LayoutRequest::Mode::kOrganic;
  } else if (*mode == "grouped") {
    req.mode = LayoutRequest::Mode::kGrouped;
  } else {
    throw ParseError("'mode' must be \"organic\" or \"grouped\"", 0, 0);
  }
  if (auto it = j.find("group_by"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("'group_by' must be a string", 0, 0);
    req.group_by = it->get<std::string>();
  }
  auto read_number = [&](const char* key, double& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number()) throw ParseError(std::string("'") + key + "' must be a number", 0, 0);
    out = it->get<double>();
  };
  read_number("spacing", req.spacing);
  read_number("duration", req.duration);
  read_number("stagger", req.stagger);
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw ParseError("'seed' must be a non-negative integer", 0, 0);
    req.seed = it->get<std::uint64_t>();
  }
  return req;
}

struct HttpReply {
  int status = 200;
  std::string body;
};

inline HttpReply json_error(int status, const std::string& message) {
  return {status, canonical_dump(Json{{"error", message}})};
}

/// Request handling against an immutable scene. Every method is const and
/// safe to call from concurrent handler threads.
class SceneService {
 public:
  explicit SceneService(SceneDocument doc)
      : doc_(std::move(doc)),
        scene_text_(serialize_scene(doc_)),
        legend_text_(canonical_dump(to_json(doc_.legend))),
        organic_(doc_.positions()) {}

  static SceneService from_text(std::string_view text) { return SceneService(parse_scene(text)); }

  const SceneDocument& document() const { return doc_; }

  HttpReply health() const { return {200, R"({"status":"ok"})"}; }
  HttpReply scene() const { return {200, scene_text_}; }
  HttpReply legend() const { return {200, legend_text_}; }

  HttpReply entity(std::string_view id) const {
    const GardenEntity* e = doc_.find(id);
    if (!e) return json_error(404, "no such entity: " + std::string(id));
    return {200, canonical_dump(Json{{"id", e->id}, {"tooltip", to_json(e->tooltip)}})};
  }

  HttpReply layout(std::string_view body) const {
    LayoutRequest req;
    try {
      req = parse_layout_request(body);
    } catch (const ParseError& e) {
      return json_error(400, e.what());
    }
    try {
      const LayoutResult target = compute_layout(req);
      const TransitionPlan plan = plan_transition(organic_, target, req.duration, req.stagger);
      return {200, canonical_dump(Json{{"positions", to_json(target)}, {"transition", to_json(plan)}})};
    } catch (const Error& e) {
      return json_error(422, e.what());
    }
  }

 private:
  LayoutResult compute_layout(const LayoutRequest& req) const {
    if (req.mode == LayoutRequest::Mode::kGrouped) {
      if (!req.group_by) throw InvalidArgument("grouped mode requires 'group_by'");
      return grouped_layout(doc_.entities, *req.group_by, doc_.meta.schema, req.spacing);
    }
    std::vector<std::string> ids;
    ids.reserve(doc_.entities.size());
    for (const auto& e : doc_.entities) ids.push_back(e.id);
    return organic_layout(ids, doc_.bounds, req.spacing, req.seed);
  }

  SceneDocument doc_;
  std::string scene_text_;
  std::string legend_text_;
  LayoutResult organic_;
};

inline constexpr const char* kJsonContentType = "application/json";

/// Wires the service into an httplib server. Returns false when
/// `static_dir` is given but cannot be mounted.
inline bool install_routes(httplib::Server& server, const SceneService& service,
                           const std::optional<std::string>& static_dir = std::nullopt) {
  auto send = [](httplib::Response& res, HttpReply reply) {
    res.status = reply.status;
    res.set_content(std::move(reply.body), kJsonContentType);
  };
  server.Get("/healthz", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });
  server.Get("/api/scene", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.scene());
  });
  server.Get("/api/legend", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.legend());
  });
  server.Get(R"(/api/entity/([^/]+))",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.entity(req.matches[1].str()));
             });
  server.Post("/api/layout", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.layout(req.body));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(json_error(res.status, httplib::status_message(res.status)).body,
                      kJsonContentType);
    }
  });
  if (static_dir && !server.set_mount_point("/", *static_dir)) return false;
  return true;
}

}  // namespace datagarden
