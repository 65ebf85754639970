#pragma once

// Command implementations behind the `datagarden` tool. They write to the
// given streams and return the process exit status so tests can drive them
// in-process.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "datagarden/encoder.hpp"
#include "datagarden/error.hpp"
#include "datagarden/layout.hpp"
#include "datagarden/mapping.hpp"
#include "datagarden/scene.hpp"
#include "datagarden/survey.hpp"

namespace datagarden::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUnreadable = 2;

struct BundlePaths {
  std::string schema;
  std::string mapping;
  std::string data;
};

struct BuildOptions {
  BundlePaths inputs;
  std::string out;
  Bounds bounds{40.0, 40.0};
  double min_sep = 1.5;
  std::uint64_t seed = 42;
  std::string title = "Community garden";
};

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

/// "40x40" -> {40, 40}.
inline Bounds parse_bounds(std::string_view text) {
  const auto x = text.find_first_of("xX");
  auto parse = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0) ||
        !std::isfinite(v)) {
      throw InvalidArgument("bounds must look like WxD with positive numbers, got '" +
                            std::string(text) + "'");
    }
    return v;
  };
  if (x == std::string_view::npos) parse({});
  return {parse(text.substr(0, x)), parse(text.substr(x + 1))};
}

/// "ERROR file:line message".
inline void print_diagnostic(std::ostream& out, Severity level, const std::string& file,
                             std::size_t line, const std::string& message) {
  out << severity_name(level) << ' ' << file << ':' << line << ' ' << message << '\n';
}

inline void print_parse_error(std::ostream& out, const std::string& file, const ParseError& e) {
  std::string msg = e.what();
  if (e.column() > 0) msg += " (column " + std::to_string(e.column()) + ")";
  print_diagnostic(out, Severity::kError, file, e.line(), msg);
}

struct Bundle {
  SurveySchema schema;
  MappingSpec mapping;
  std::vector<ResponseRecord> records;
};

/// Reads, parses and validates the three inputs, printing every problem.
/// `status` receives the exit code; the bundle is returned only when it is
/// fully valid.
inline std::optional<Bundle> load_bundle(const BundlePaths& paths, std::ostream& err, int& status) {
  std::optional<std::string> texts[3];
  const std::string* names[3] = {&paths.schema, &paths.mapping, &paths.data};
  bool unreadable = false;
  for (int i = 0; i < 3; ++i) {
    texts[i] = read_file(*names[i]);
    if (!texts[i]) {
      print_diagnostic(err, Severity::kError, *names[i], 0, "cannot read file");
      unreadable = true;
    }
  }
  if (unreadable) {
    status = kExitUnreadable;
    return std::nullopt;
  }

  status = kExitInvalid;
  Bundle b;
  try {
    b.schema = parse_schema(*texts[0]);
  } catch (const ParseError& e) {
    print_parse_error(err, paths.schema, e);
    return std::nullopt;
  }

  bool ok = true;
  bool have_mapping = true, have_records = true;
  try {
    b.mapping = parse_mapping(*texts[1]);
  } catch (const ParseError& e) {
    print_parse_error(err, paths.mapping, e);
    ok = have_mapping = false;
  }
  try {
    b.records = parse_responses(*texts[2], b.schema);
  } catch (const ParseError& e) {
    print_parse_error(err, paths.data, e);
    ok = have_records = false;
  }
  if (have_mapping) {
    for (const auto& d : validate_mapping(b.mapping, b.schema)) {
      print_diagnostic(err, d.level, paths.mapping, d.line, d.message);
      ok = false;
    }
  }
  if (have_records) {
    for (const auto& d : validate_records(b.records, b.schema)) {
      print_diagnostic(err, d.level, paths.data, d.line,
                       "record " + d.subject + (d.question.empty() ? "" : ", " + d.question) +
                           ": " + d.message);
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  status = kExitOk;
  return b;
}

inline int run_validate(const BundlePaths& paths, std::ostream& err) {
  int status = kExitOk;
  load_bundle(paths, err, status);
  return status;
}

inline SceneDocument build_scene(const Bundle& b, const BuildOptions& opt) {
  std::vector<GardenEntity> entities = encode(b.records, b.mapping, b.schema);
  std::vector<std::string> ids;
  ids.reserve(entities.size());
  for (const auto& e : entities) ids.push_back(e.id);
  const LayoutResult layout = organic_layout(ids, opt.bounds, opt.min_sep, opt.seed);
  SceneMeta meta;
  meta.title = opt.title;
  for (const auto* p : {&opt.inputs.schema, &opt.inputs.mapping, &opt.inputs.data}) {
    meta.generated_from.push_back(std::filesystem::path(*p).filename().string());
  }
  meta.schema = b.schema;
  return assemble_scene(std::move(entities), layout, derive_legend(b.mapping, b.schema, b.records),
                        opt.bounds, std::move(meta));
}

inline int run_build(const BuildOptions& opt, std::ostream& err) {
  int status = kExitOk;
  auto bundle = load_bundle(opt.inputs, err, status);
  if (!bundle) return status;
  std::string text;
  try {
    text = serialize_scene(build_scene(*bundle, opt));
  } catch (const Error& e) {  // includes CapacityError
    print_diagnostic(err, Severity::kError, opt.inputs.data, 0, e.what());
    return kExitInvalid;
  }
  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    print_diagnostic(err, Severity::kError, opt.out, 0, "cannot write file");
    return kExitUnreadable;
  }
  return kExitOk;
}

}  // namespace datagarden::cli
