#include "photon/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>

#include "photon/error.hpp"

namespace photon {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected photon::Error";
  return ErrorCode::kIo;
}

const ValidationIssue* find_issue(const ValidationResult& r,
                                  std::string_view code) {
  for (const auto& issue : r.issues) {
    if (issue.code == code) return &issue;
  }
  return nullptr;
}

Scenario two_q_shells() {
  Scenario s;
  s.shells = {{"inner", DirectProbability{0.5}},
              {"outer", DirectProbability{0.25}}};
  s.detector.interaction = DirectProbability{0.1};
  return s;
}

TEST(VacuumProbabilityTest, Examples) {
  EXPECT_DOUBLE_EQ(vacuum_probability(1.0, kFourPi), 1.0);
  EXPECT_DOUBLE_EQ(vacuum_probability(2.0, kFourPi), 0.25);
  EXPECT_EQ(code_of([] { vacuum_probability(0.1, kFourPi); }),
            ErrorCode::kInvalidGeometry);
  EXPECT_EQ(code_of([] { vacuum_probability(0.0, 1.0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { vacuum_probability(1.0, -1.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(VacuumProbabilityTest, MonotoneInRadiusAndCrossSection) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> radius(1.0, 100.0);
  std::uniform_real_distribution<double> section(1e-3, 12.0);
  for (int i = 0; i < 1000; ++i) {
    const double r1 = radius(rng), r2 = radius(rng);
    const double a1 = section(rng), a2 = section(rng);
    if (r1 == r2 || a1 == a2) continue;
    EXPECT_EQ(vacuum_probability(r1, a1) > vacuum_probability(r2, a1), r1 < r2);
    EXPECT_EQ(vacuum_probability(r1, a1) < vacuum_probability(r1, a2), a1 < a2);
  }
}

TEST(ValidateTest, ResolvesGeometry) {
  Scenario s;
  s.shells = {{"near", Geometry{1.0, kFourPi}}, {"far", Geometry{2.0, kFourPi}}};
  s.detector.interaction = Geometry{3.0, kFourPi};
  const auto r = validate(s);
  ASSERT_TRUE(r.ok());
  const QVector& qv = r.scenario->qv;
  ASSERT_EQ(qv.absorber_count(), 2u);
  EXPECT_DOUBLE_EQ(qv.absorber(1), 1.0);
  EXPECT_DOUBLE_EQ(qv.absorber(2), 0.25);
  EXPECT_NEAR(qv.detector(), 1.0 / 9.0, 1e-15);
  EXPECT_EQ(r.scenario->labels, (std::vector<std::string>{"near", "far"}));
}

TEST(ValidateTest, ShellsMustIncrease) {
  Scenario s;
  s.shells = {{"a", Geometry{2.0, 1.0}}, {"b", Geometry{1.0, 1.0}}};
  s.detector.interaction = DirectProbability{0.5};
  const auto r = validate(s);
  ASSERT_FALSE(r.ok());
  const auto* issue = find_issue(r, "shells-not-increasing");
  ASSERT_NE(issue, nullptr);
  EXPECT_EQ(issue->label, "b");
  EXPECT_FALSE(r.scenario.has_value());
}

TEST(ValidateTest, DetectorMustBeOutside) {
  Scenario s;
  s.shells = {{"a", Geometry{2.0, 1.0}}};
  s.detector.interaction = Geometry{2.0, 1.0};
  EXPECT_NE(find_issue(validate(s), "detector-not-outside"), nullptr);
}

TEST(ValidateTest, BunchNeedsMultiphotonDetector) {
  Scenario s = two_q_shells();
  s.emission = {EmissionMode::kBunched, 5, 1.0};
  s.detector.mode = DetectorMode::kSingle;
  EXPECT_NE(find_issue(validate(s), "detector-mode"), nullptr);
  s.detector.mode = DetectorMode::kMultiphoton;
  EXPECT_TRUE(validate(s).ok());
  s.detector.mode = DetectorMode::kSingle;
  s.emission.photons_k = 1;
  EXPECT_TRUE(validate(s).ok());
}

TEST(ValidateTest, ReportsEveryIssueWithLabels) {
  Scenario s;
  s.shells = {{"big", Geometry{0.1, kFourPi}}, {"neg", DirectProbability{-0.2}}};
  s.detector.interaction = DirectProbability{1.5};
  s.emission.interval_t_s = 0.0;
  const auto r = validate(s);
  EXPECT_EQ(r.issues.size(), 4u);
  EXPECT_EQ(find_issue(r, "invalid-geometry")->label, "big");
  EXPECT_NE(find_issue(r, "invalid-emission"), nullptr);
  EXPECT_EQ(code_of([&] { validate_or_throw(s); }), ErrorCode::kValidation);
}

TEST(ValidateTest, EmptyShellsAreVacuum) {
  Scenario s;
  s.detector.interaction = DirectProbability{0.3};
  const auto r = validate(s);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.scenario->absorber_count(), 0u);
}

TEST(ValidateTest, ResolvedValuesAlwaysInUnitInterval) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Scenario s;
    double radius = 0.5;
    for (int j = 0; j < 5; ++j) {
      radius += u(rng) + 0.01;
      const double area = 4.0 * std::numbers::pi * radius * radius;
      if (rng() % 2) {
        s.shells.push_back({"s", Geometry{radius, area * u(rng) + 1e-9}});
      } else {
        s.shells.push_back({"s", DirectProbability{u(rng)}});
      }
    }
    s.detector.interaction = DirectProbability{u(rng)};
    const auto r = validate(s);
    ASSERT_TRUE(r.ok());
    for (double q : r.scenario->qv.absorbers()) {
      EXPECT_GE(q, 0.0);
      EXPECT_LE(q, 1.0);
    }
  }
}

TEST(ScenarioFileTest, MinimalFile) {
  const Scenario s = parse_scenario(R"({
    "shells": [{"label": "s1", "q": 0.5}],
    "detector": {"q": 0.3},
    "emission": {"mode": "separate", "photons_k": 1, "interval_t_s": 1.0},
    "trials": 0,
    "seed": 0
  })");
  ASSERT_EQ(s.shells.size(), 1u);
  EXPECT_EQ(s.shells[0].label, "s1");
  EXPECT_EQ(std::get<DirectProbability>(s.shells[0].interaction).q, 0.5);
  EXPECT_EQ(s.detector.mode, DetectorMode::kSingle);
  EXPECT_EQ(s.emission.photons_k, 1u);
  EXPECT_EQ(s.trials, 0u);
}

TEST(ScenarioFileTest, MissingDetector) {
  try {
    parse_scenario(R"({"shells": [], "emission": {"mode": "separate", "photons_k": 1}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find("`detector`"), std::string::npos);
  }
}

TEST(ScenarioFileTest, ExclusiveFields) {
  try {
    parse_scenario(R"({"shells": [{"label": "x", "q": 0.5, "radius_m": 1.0,
                      "cross_section_m2": 1.0}], "detector": {"q": 0.1},
                      "emission": {"mode": "separate", "photons_k": 1}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find("exclusive-fields"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("shells[0]"), std::string::npos);
  }
}

TEST(ScenarioFileTest, RejectsUnknownKeysAndBadTypes) {
  const auto code = [](const char* text) {
    return code_of([text] { parse_scenario(text); });
  };
  EXPECT_EQ(code(R"({"shells": [], "detector": {"q": 0.1}, "emission":
                 {"mode": "separate", "photons_k": 1}, "colour": "red"})"),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(code(R"({"shells": [], "detector": {"q": "high"}, "emission":
                 {"mode": "separate", "photons_k": 1}})"),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(code(R"({"shells": [], "detector": {"q": 0.1, "mode": "fancy"},
                 "emission": {"mode": "separate", "photons_k": 1}})"),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(code(R"({"shells": [], "detector": {"q": 0.1}, "emission":
                 {"mode": "separate", "photons_k": 0}})"),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(code(R"({"shells": [], "detector": {"q": 0.1}, "emission":
                 {"mode": "separate", "photons_k": -3}})"),
            ErrorCode::kSchemaViolation);
  EXPECT_EQ(code(R"({"shells": [{"radius_m": 1.0}], "detector": {"q": 0.1},
                 "emission": {"mode": "separate", "photons_k": 1}})"),
            ErrorCode::kSchemaViolation);
}

TEST(ScenarioFileTest, ParseErrorCarriesLine) {
  try {
    parse_scenario("{\n  \"shells\": [\n    }\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(ScenarioFileTest, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_scenario("/nonexistent/scenario.json"); }),
            ErrorCode::kIo);
}

TEST(ScenarioFileTest, ShippedScenariosLoad) {
  for (const char* name : {"worked_separate.json", "worked_bunched.json",
                           "vacuum.json", "geometric.json",
                           "guaranteed_survivors.json"}) {
    const Scenario s =
        load_scenario(std::filesystem::path(PHOTON_SCENARIO_DIR) / name);
    EXPECT_TRUE(validate(s).ok()) << name;
  }
  EXPECT_EQ(code_of([] {
              load_scenario(std::filesystem::path(PHOTON_SCENARIO_DIR) /
                            "malformed.json");
            }),
            ErrorCode::kParse);
}

TEST(ScenarioFileTest, RoundTripsRandomScenarios) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto tmp = std::filesystem::temp_directory_path() / "photon_rt.json";
  for (int i = 0; i < 100; ++i) {
    Scenario s;
    const int shells = static_cast<int>(rng() % 6);
    for (int j = 0; j < shells; ++j) {
      if (rng() % 2) {
        s.shells.push_back({"shell" + std::to_string(j),
                            Geometry{1.0 + j + u(rng), u(rng) * 3.0 + 1e-9}});
      } else {
        s.shells.push_back({"q" + std::to_string(j), DirectProbability{u(rng)}});
      }
    }
    s.detector.label = "det";
    s.detector.interaction = DirectProbability{u(rng)};
    s.detector.mode = rng() % 2 ? DetectorMode::kSingle : DetectorMode::kMultiphoton;
    s.emission = {rng() % 2 ? EmissionMode::kSeparate : EmissionMode::kBunched,
                  1 + rng() % 50, u(rng) + 1e-12};
    s.trials = rng() % 1'000'000;
    s.seed = rng();
    save_scenario(s, tmp);
    EXPECT_EQ(load_scenario(tmp), s);
  }
  std::filesystem::remove(tmp);
}

}  // namespace
}  // namespace photon
