// datagarden: validate survey bundles, build scene documents, serve them.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "datagarden/cli.hpp"
#include "datagarden/server.hpp"

namespace {

void add_bundle_options(CLI::App* cmd, datagarden::cli::BundlePaths& paths) {
  cmd->add_option("--schema", paths.schema, "Question declarations")->required();
  cmd->add_option("--mapping", paths.mapping, "Visual mapping document")->required();
  cmd->add_option("--data", paths.data, "Survey responses (CSV with header)")->required();
}

int serve(const std::string& scene_path, int port, const std::optional<std::string>& static_dir) {
  namespace dg = datagarden;
  auto text = dg::cli::read_file(scene_path);
  if (!text) {
    std::cerr << "ERROR " << scene_path << ":0 cannot read file\n";
    return dg::cli::kExitUnreadable;
  }
  std::optional<dg::SceneService> service;
  try {
    service.emplace(dg::SceneService::from_text(*text));
  } catch (const dg::ParseError& e) {
    dg::cli::print_parse_error(std::cerr, scene_path, e);
    return dg::cli::kExitInvalid;
  }
  httplib::Server server;
  if (!dg::install_routes(server, *service, static_dir)) {
    std::cerr << "ERROR " << *static_dir << ":0 cannot mount static directory\n";
    return dg::cli::kExitUnreadable;
  }
  if (!server.bind_to_port("0.0.0.0", port)) {
    std::cerr << "ERROR cannot bind port " << port << "\n";
    return dg::cli::kExitUnreadable;
  }
  std::cerr << "serving " << service->document().meta.entity_count << " entities on http://0.0.0.0:"
            << port << "\n";
  server.listen_after_bind();
  return dg::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survey responses to an explorable garden scene"};
  app.require_subcommand(1);

  datagarden::cli::BundlePaths validate_paths;
  auto* validate = app.add_subcommand("validate", "Check schema, mapping and data");
  add_bundle_options(validate, validate_paths);

  datagarden::cli::BuildOptions build_opts;
  std::string bounds_text = "40x40";
  auto* build = app.add_subcommand("build", "Write a scene document");
  add_bundle_options(build, build_opts.inputs);
  build->add_option("--out,-o", build_opts.out, "Scene file to write")->required();
  build->add_option("--bounds", bounds_text, "Garden size as WxD")->capture_default_str();
  build->add_option("--min-sep", build_opts.min_sep, "Minimum spacing between entities")
      ->capture_default_str();
  build->add_option("--seed", build_opts.seed, "Layout seed")->capture_default_str();
  build->add_option("--title", build_opts.title, "Scene title")->capture_default_str();

  std::string scene_path;
  int port = datagarden::kDefaultPort;
  std::optional<std::string> static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a scene over HTTP");
  serve_cmd->add_option("--scene", scene_path, "Scene document")->required();
  serve_cmd->add_option("--port", port, "Listen port")->capture_default_str();
  serve_cmd->add_option("--static", static_dir, "Directory of viewer assets");

  CLI11_PARSE(app, argc, argv);

  if (*validate) return datagarden::cli::run_validate(validate_paths, std::cout);
  if (*build) {
    try {
      build_opts.bounds = datagarden::cli::parse_bounds(bounds_text);
    } catch (const datagarden::Error& e) {
      std::cerr << "ERROR " << e.what() << "\n";
      return datagarden::cli::kExitInvalid;
    }
    return datagarden::cli::run_build(build_opts, std::cerr);
  }
  return serve(scene_path, port, static_dir);
}
