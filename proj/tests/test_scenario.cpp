#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"
#include "msloc/scenario.hpp"

using namespace msloc;

namespace {

const char* kTable1 = R"({
  "txs": [{"range_m": 50, "angle_deg": 0}, {"range_m": 20, "angle_deg": 45}, {"range_m": 25, "angle_deg": 135}],
  "target": {"range_m": 50, "angle_deg": 90, "speed_mps": 20, "heading_deg": 90},
  "noise": {"sigma_br_m": 0.1, "sigma_brr_mps": 0.1, "sigma_doa_deg": 0.5},
  "trials": 5000, "seed": 0
})";

std::string with_noise(const char* noise) {
    return std::string(R"({"txs": [{"range_m": 50, "angle_deg": 0}],
      "target": {"range_m": 50, "angle_deg": 90, "speed_mps": 20, "heading_deg": 90},
      "noise": )") + noise + "}";
}

TEST(ParseScenario, TableOne) {
    const auto s = parse_scenario_text(kTable1);
    const auto scene = s.scene();
    ASSERT_EQ(scene.pair_count(), 3u);
    EXPECT_EQ(scene.tx(1).range_m, 20.0);
    EXPECT_NEAR(scene.tx(1).angle_rad, kPi / 4.0, 1e-15);
    EXPECT_NEAR(s.target_state().velocity.heading_rad, kPi / 2.0, 1e-15);
    EXPECT_EQ(s.noise, (NoiseSpec{0.1, 0.1, 0.5}));
    EXPECT_EQ(s.trials, 5000u);
    EXPECT_EQ(s.seed, 0u);
    EXPECT_FALSE(s.sweep);
}

TEST(ParseScenario, DefaultBounds) {
    const auto s = parse_scenario_text(with_noise("{}"));
    EXPECT_EQ(s.bounds.max_range_m, 1000.0);
    EXPECT_EQ(s.bounds.max_speed_mps, 100.0);
    EXPECT_EQ(s.trials, 5000u);
}

TEST(ParseScenario, NegativeSigmaNamesField) {
    try {
        parse_scenario_text(with_noise(R"({"sigma_br_m": -1})"));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "noise.sigma_br_m");
    }
}

TEST(ParseScenario, UnknownKeyIsParseError) {
    try {
        parse_scenario_text(with_noise(R"({"sigma_bogus": 1})"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "noise.sigma_bogus");
    }
}

TEST(ParseScenario, MalformedJsonReportsLine) {
    try {
        parse_scenario_text("{\n\"txs\": [\n,]}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ParseScenario, Invariants) {
    EXPECT_THROW(parse_scenario_text(R"({"txs": [], "target": {"range_m": 1, "angle_deg": 0, "speed_mps": 0, "heading_deg": 0}})"),
                 ValidationError);
    EXPECT_THROW(parse_scenario_text(R"({"txs": [{"range_m": 1, "angle_deg": 0}],
        "target": {"range_m": 1, "angle_deg": 0, "speed_mps": 200, "heading_deg": 0}})"),
                 ValidationError);
    EXPECT_THROW(parse_scenario_text(R"({"txs": [{"range_m": 1, "angle_deg": 0}],
        "target": {"range_m": 1, "angle_deg": 0, "speed_mps": 2, "heading_deg": 0}, "trials": 0})"),
                 ValidationError);
    EXPECT_THROW(parse_scenario_text(R"({"txs": [{"range_m": 1, "angle_deg": 0}],
        "target": {"range_m": 1, "angle_deg": 0, "speed_mps": 2}})"),
                 ParseError);
}

TEST(ParseScenario, SweepDefaultsToSevenLogPoints) {
    std::string text = kTable1;
    text.insert(text.rfind('}'), R"(, "sweep": {"channel": "brr"})");
    const auto s = parse_scenario_text(text);
    ASSERT_TRUE(s.sweep);
    EXPECT_EQ(s.sweep->channel, SweepChannel::brr);
    EXPECT_EQ(s.sweep->values, log_spaced(0.1, 10.0, 7));
    EXPECT_EQ(s.sweep_spec().values.size(), 7u);
    EXPECT_THROW(parse_scenario_text(kTable1).sweep_spec(), ValidationError);
}

TEST(ScenarioProperty, WriteThenParseRoundTrips) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> r(1.0, 500.0), a(0.0, 180.0), h(0.0, 360.0), sig(0.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        ScenarioFile s;
        const int n = 1 + k % 4;
        for (int i = 0; i < n; ++i) s.txs.push_back({r(rng), a(rng)});
        s.target = {r(rng), a(rng), sig(rng) * 10.0, h(rng)};
        s.noise = {sig(rng), sig(rng), sig(rng)};
        s.trials = 1 + static_cast<std::size_t>(k);
        s.seed = rng();
        if (k % 2) s.sweep = ScenarioFile::Sweep{SweepChannel::doa, {0.0, sig(rng) + 0.01, 6.0}};
        const auto back = parse_scenario_text(write_scenario(s));
        ASSERT_EQ(back, s) << write_scenario(s);
    }
}

}  // namespace
