#include "datagarden/encoder.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace datagarden {
namespace {

const std::vector<std::string> kMbti = {"INTJ", "INTP", "ENTJ", "ENTP", "INFJ", "INFP", "ENFJ", "ENFP",
                                        "ISTJ", "ISFJ", "ESTJ", "ESFJ", "ISTP", "ISFP", "ESTP", "ESFP"};

SurveySchema campus_schema() {
  return parse_schema(R"(
    question role : categorical { student, faculty }
    question mbti : categorical { INTJ, INTP, ENTJ, ENTP, INFJ, INFP, ENFJ, ENFP,
                                  ISTJ, ISFJ, ESTJ, ESFJ, ISTP, ISFP, ESTP, ESFP }
    question plastic_usage : numeric [0, 10]
    question outlook : ordinal { gloomy < neutral < bright }
    question note : text
  )");
}

MappingSpec campus_mapping() {
  return parse_mapping(R"(
    map archetype by role { student -> flower ; faculty -> tree }
    map color by mbti palette distinct
    map satellites cloud by plastic_usage bins [2, 4, 6]
    map scale by plastic_usage range [0.5, 1.5]
  )");
}

// Binning by definition: how many thresholds are <= v.
std::size_t brute_force_count(double v, const std::vector<double>& thresholds) {
  std::size_t n = 0;
  for (double t : thresholds) n += v >= t ? 1 : 0;
  return n;
}

TEST(Encode, FacultyBecomesTree) {
  const auto es = encode({{"p1", {{"role", std::string("faculty")}}}}, campus_mapping(), campus_schema());
  ASSERT_EQ(es.size(), 1u);
  EXPECT_EQ(es[0].archetype, "tree");
}

TEST(Encode, CloudCounts) {
  const auto schema = campus_schema();
  const auto spec = campus_mapping();
  const auto es = encode({{"a", {{"role", std::string("student")}, {"plastic_usage", 5.0}}},
                          {"b", {{"role", std::string("student")}, {"plastic_usage", 1.0}}}},
                         spec, schema);
  EXPECT_EQ(es[0].satellites.at("cloud"), 2u);
  EXPECT_EQ(es[1].satellites.at("cloud"), 0u);
}

TEST(Encode, MissingFallbacks) {
  const auto es = encode({{"p", {{"role", std::string("student")}}}}, campus_mapping(), campus_schema());
  EXPECT_EQ(es[0].satellites.at("cloud"), 0u);
  EXPECT_EQ(es[0].scale, 1.0);  // midpoint of [0.5, 1.5]
  EXPECT_EQ(es[0].color, (Hsl{0, 0, 50}));
  EXPECT_TRUE(es[0].tooltip == (Tooltip{{"role", "student"}}));
}

TEST(Encode, ArchetypeNeedsArmOrDefault) {
  const auto schema = campus_schema();
  const auto no_default = parse_mapping("map archetype by role { student -> flower }");
  EXPECT_THROW(encode({{"p9", {{"role", std::string("faculty")}}}}, no_default, schema), InvalidArgument);
  try {
    encode({{"p9", {}}}, no_default, schema);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("p9"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("role"), std::string::npos);
  }
  const auto with_default = parse_mapping("map archetype by role { student -> flower ; default -> shrub }");
  const auto es = encode({{"a", {{"role", std::string("faculty")}}}, {"b", {}}}, with_default, schema);
  EXPECT_EQ(es[0].archetype, "shrub");
  EXPECT_EQ(es[1].archetype, "shrub");
}

TEST(Encode, OrdinalDrivesBinsAndScaleByRank) {
  const auto schema = campus_schema();
  const auto spec = parse_mapping(
      "map archetype by role { default -> flower }\n"
      "map satellites sun by outlook bins [1, 2]\n"
      "map scale by outlook range [1, 2]");
  const auto es = encode({{"a", {{"outlook", std::string("gloomy")}}},
                          {"b", {{"outlook", std::string("neutral")}}},
                          {"c", {{"outlook", std::string("bright")}}}},
                         spec, schema);
  EXPECT_EQ(es[0].satellites.at("sun"), 0u);
  EXPECT_EQ(es[1].satellites.at("sun"), 1u);
  EXPECT_EQ(es[2].satellites.at("sun"), 2u);
  EXPECT_EQ(es[0].scale, 1.0);
  EXPECT_EQ(es[1].scale, 1.5);
  EXPECT_EQ(es[2].scale, 2.0);
}

TEST(Encode, NoScaleBindingMeansUnitScale) {
  const auto es = encode({{"a", {}}}, parse_mapping("map archetype by role { default -> x }"), campus_schema());
  EXPECT_EQ(es[0].scale, 1.0);
  EXPECT_TRUE(es[0].satellites.empty());
}

TEST(PaletteColor, TwoCategories) {
  const std::vector<std::string> cats = {"a", "b"};
  EXPECT_EQ(palette_color("a", cats).h, 0.0);
  EXPECT_EQ(palette_color("b", cats).h, 180.0);
}

TEST(PaletteColor, IntjAmongSixteen) {
  // Sorted: ENFJ ENFP ENTJ ENTP ESFJ ESFP ESTJ ESTP INFJ INFP INTJ -> index 10.
  EXPECT_EQ(palette_color("INTJ", kMbti), (Hsl{225, 70, 50}));
}

TEST(PaletteColor, SingleCategory) {
  EXPECT_EQ(palette_color("only", std::vector<std::string>{"only"}), (Hsl{0, 70, 50}));
}

TEST(PaletteColor, UnknownCategory) {
  EXPECT_THROW(palette_color("zzz", kMbti), InvalidArgument);
}

TEST(PaletteColor, InjectiveUpTo360) {
  for (std::size_t k = 1; k <= 360; ++k) {
    std::vector<std::string> cats;
    for (std::size_t i = 0; i < k; ++i) cats.push_back("c" + std::to_string(i));
    std::set<double> hues;
    for (const auto& c : cats) {
      const double h = palette_color(c, cats).h;
      ASSERT_GE(h, 0.0);
      ASSERT_LT(h, 360.0);
      hues.insert(h);
    }
    ASSERT_EQ(hues.size(), k);
  }
}

TEST(Binning, MatchesDefinitionAndIsMonotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> t;
    double x = -20.0 + static_cast<double>(rng() % 40);
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      t.push_back(x);
      x += 0.25 * static_cast<double>(1 + rng() % 12);
    }
    std::size_t prev = 0;
    for (double v = -40.0; v <= 40.0; v += 0.125) {
      const std::size_t got = satellite_count(v, t);
      ASSERT_EQ(got, brute_force_count(v, t)) << v;
      ASSERT_GE(got, prev);
      ASSERT_LE(got, t.size());
      prev = got;
    }
  }
}

TEST(ScaleValue, StaysInRangeIncludingClampedInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> any(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = any(rng), w = 0.01 + std::abs(any(rng));
    const double lo = any(rng), span = 0.01 + std::abs(any(rng));
    const double s = scale_value(any(rng), lo, lo + span, a, a + w);
    ASSERT_GE(s, a);
    ASSERT_LE(s, a + w);
  }
  EXPECT_EQ(scale_value(0.0, 0.0, 10.0, 1.0, 3.0), 1.0);
  EXPECT_EQ(scale_value(5.0, 0.0, 10.0, 1.0, 3.0), 2.0);
  EXPECT_EQ(scale_value(10.0, 0.0, 10.0, 1.0, 3.0), 3.0);
  EXPECT_EQ(scale_value(99.0, 0.0, 10.0, 1.0, 3.0), 3.0);
}

TEST(EncodeProperty, TotalDeterministicAndBounded) {
  const auto schema = campus_schema();
  const auto spec = campus_mapping();
  std::mt19937_64 rng(3);
  std::vector<ResponseRecord> recs;
  for (int i = 0; i < 300; ++i) {
    ResponseRecord r{"p" + std::to_string(i), {}};
    r.values["role"] = std::string(rng() % 2 ? "student" : "faculty");
    if (rng() % 5) r.values["mbti"] = kMbti[rng() % kMbti.size()];
    if (rng() % 4) r.values["plastic_usage"] = static_cast<double>(rng() % 1001) / 100.0;
    recs.push_back(std::move(r));
  }
  const auto a = encode(recs, spec, schema);
  ASSERT_EQ(a.size(), recs.size());
  EXPECT_EQ(a, encode(recs, spec, schema));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, recs[i].id);
    EXPECT_GE(a[i].scale, 0.5);
    EXPECT_LE(a[i].scale, 1.5);
    EXPECT_LE(a[i].satellites.at("cloud"), 3u);
    const auto& pu = recs[i].get("plastic_usage");
    const std::size_t want =
        is_missing(pu) ? 0 : brute_force_count(std::get<double>(pu), {2, 4, 6});
    EXPECT_EQ(a[i].satellites.at("cloud"), want);
  }
}

TEST(TooltipPayload, SchemaOrder) {
  const auto schema = campus_schema();
  // Map iteration would give mbti before role; the payload follows the schema.
  const std::vector<ResponseRecord> recs = {
      {"p1", {{"mbti", std::string("INTJ")}, {"role", std::string("student")}}}};
  EXPECT_TRUE(tooltip_payload("p1", recs, schema) == (Tooltip{{"role", "student"}, {"mbti", "INTJ"}}));
}

TEST(TooltipPayload, AllMissing) {
  const std::vector<ResponseRecord> recs = {{"p1", {{"role", Value{}}}}};
  EXPECT_TRUE(tooltip_payload("p1", recs, campus_schema()).empty());
}

TEST(TooltipPayload, UnknownId) {
  try {
    tooltip_payload("zzz", {}, campus_schema());
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("no such entity"), std::string::npos);
  }
}

TEST(TooltipPayload, NumericDisplay) {
  const auto schema = campus_schema();
  auto shown = [&](double v) {
    return tooltip_payload("p", {{"p", {{"plastic_usage", v}}}}, schema).at(0).second;
  };
  EXPECT_EQ(shown(5.0), "5");
  EXPECT_EQ(shown(2.5), "2.5");
  EXPECT_EQ(shown(1.23456), "1.235");
  EXPECT_EQ(shown(0.1), "0.1");
  EXPECT_EQ(shown(0.0004), "0");
}

}  // namespace
}  // namespace datagarden
