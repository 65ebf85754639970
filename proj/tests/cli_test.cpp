#include "datagarden/cli.hpp"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace datagarden::cli {
namespace {

using datagarden::testing::sample_path;
using datagarden::testing::slurp;
using datagarden::testing::spit;
using datagarden::testing::TempDir;

BundlePaths sample_bundle() {
  return {sample_path("survey.schema"), sample_path("garden.map"), sample_path("responses.csv")};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Validate, SampleBundleIsClean) {
  std::ostringstream out;
  EXPECT_EQ(run_validate(sample_bundle(), out), kExitOk);
  EXPECT_EQ(out.str(), "");
}

TEST(Validate, UnknownQuestionInMapping) {
  TempDir dir;
  spit(dir / "bad.map",
       "map archetype by role { student -> flower ; faculty -> tree }\n"
       "map color by zodiac palette distinct\n");
  auto paths = sample_bundle();
  paths.mapping = (dir / "bad.map").string();
  std::ostringstream out;
  EXPECT_EQ(run_validate(paths, out), kExitInvalid);
  EXPECT_EQ(count_lines(out.str()), 1u);
  EXPECT_EQ(out.str(), "ERROR " + paths.mapping + ":2 unknown question zodiac\n");
}

TEST(Validate, MissingFile) {
  auto paths = sample_bundle();
  paths.data = "/nonexistent/responses.csv";
  std::ostringstream out;
  EXPECT_EQ(run_validate(paths, out), kExitUnreadable);
  EXPECT_NE(out.str().find("cannot read"), std::string::npos);
}

TEST(Validate, ParseErrorCarriesLine) {
  TempDir dir;
  spit(dir / "s.schema", "question role : categorical { student, faculty }\nquestion age : numeric [30, 18]\n");
  auto paths = sample_bundle();
  paths.schema = (dir / "s.schema").string();
  std::ostringstream out;
  EXPECT_EQ(run_validate(paths, out), kExitInvalid);
  EXPECT_EQ(out.str().rfind("ERROR " + paths.schema + ":2 numeric range inverted", 0), 0u) << out.str();
}

TEST(Build, WritesDeterministicScene) {
  TempDir dir;
  BuildOptions opt;
  opt.inputs = sample_bundle();
  opt.out = (dir / "a.json").string();
  std::ostringstream err;
  ASSERT_EQ(run_build(opt, err), kExitOk) << err.str();
  opt.out = (dir / "b.json").string();
  ASSERT_EQ(run_build(opt, err), kExitOk) << err.str();
  const auto a = slurp((dir / "a.json").string());
  EXPECT_EQ(a, slurp((dir / "b.json").string()));

  const auto doc = parse_scene(a);
  // 33 lines in the sample CSV: one header plus 32 respondents.
  EXPECT_EQ(doc.meta.entity_count, 32u);
  EXPECT_EQ(doc.bounds, (Bounds{40, 40}));
  EXPECT_EQ(doc.meta.generated_from,
            (std::vector<std::string>{"survey.schema", "garden.map", "responses.csv"}));
}

TEST(Build, CapacityError) {
  TempDir dir;
  std::string csv = "role\n";
  for (int i = 0; i < 100; ++i) csv += i % 2 ? "student\n" : "faculty\n";
  spit(dir / "many.csv", csv);
  BuildOptions opt;
  opt.inputs = sample_bundle();
  opt.inputs.data = (dir / "many.csv").string();
  opt.out = (dir / "scene.json").string();
  opt.min_sep = 30;
  std::ostringstream err;
  EXPECT_EQ(run_build(opt, err), kExitInvalid);
  EXPECT_NE(err.str().find("capacity"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(opt.out));
}

TEST(Build, InvalidInputsStopEarly) {
  TempDir dir;
  BuildOptions opt;
  opt.inputs = sample_bundle();
  opt.inputs.mapping = "/nonexistent.map";
  opt.out = (dir / "scene.json").string();
  std::ostringstream err;
  EXPECT_EQ(run_build(opt, err), kExitUnreadable);
}

TEST(ParseBounds, Format) {
  EXPECT_EQ(parse_bounds("40x40"), (Bounds{40, 40}));
  EXPECT_EQ(parse_bounds("12.5x3"), (Bounds{12.5, 3}));
  EXPECT_THROW(parse_bounds("40"), InvalidArgument);
  EXPECT_THROW(parse_bounds("0x5"), InvalidArgument);
  EXPECT_THROW(parse_bounds("ax5"), InvalidArgument);
  EXPECT_THROW(parse_bounds("5x"), InvalidArgument);
}

}  // namespace
}  // namespace datagarden::cli
