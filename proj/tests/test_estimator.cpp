#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"
#include "msloc/estimator.hpp"
#include "msloc/montecarlo.hpp"
#include "test_support.hpp"

using namespace msloc;
using namespace msloc::testing;

namespace {

MeasurementSet clean(const Scene& scene, const TargetState& s) {
    RandomStream unused(0);
    return generate_measurements(ground_truth(scene, s), s.position.angle_rad, {}, unused);
}

TEST(SinglePairRange, Examples) {
    const PolarPoint tx1{50.0, 0.0};
    EXPECT_NEAR(single_pair_range(70.71068, tx1, deg_to_rad(90.0)), 50.0, 1e-4);
    EXPECT_NEAR(single_pair_range(std::sqrt(5000.0), tx1, deg_to_rad(90.0)), 50.0, 1e-12);
    EXPECT_NEAR(single_pair_range(61.84064, {25.0, deg_to_rad(135.0)}, deg_to_rad(90.0)), 50.0, 1e-4);
    // Zero bistatic range off the baseline: target on the receiver.
    EXPECT_EQ(single_pair_range(0.0, tx1, deg_to_rad(90.0)), 0.0);
    EXPECT_THROW(single_pair_range(-1.0, tx1, 1.0), std::invalid_argument);
}

TEST(SinglePairRange, DegenerateOnBaselineWithZeroRange) {
    EXPECT_THROW(single_pair_range(0.0, {50.0, 0.3}, 0.3), DegenerateGeometry);
}

TEST(EstimateDoa, MeanAndClamp) {
    MeasurementSet m;
    m.doa_rad = {deg_to_rad(89.0), deg_to_rad(91.0), deg_to_rad(90.0)};
    EXPECT_NEAR(rad_to_deg(estimate_doa(m)), 90.0, 1e-12);
    m.doa_rad = {deg_to_rad(181.0), deg_to_rad(182.0)};
    EXPECT_EQ(estimate_doa(m), kPi);
    m.doa_rad = {deg_to_rad(-1.0)};
    EXPECT_EQ(estimate_doa(m), 0.0);
    m.doa_rad.clear();
    EXPECT_THROW(estimate_doa(m), EmptyInput);
}

TEST(EstimatePosition, TableOneNoiseFree) {
    const auto scene = table1_scene();
    const auto est = estimate_position(scene, clean(scene, table1_target()));
    EXPECT_NEAR(est.position.range_m, 50.0, 1e-9);
    EXPECT_NEAR(rad_to_deg(est.position.angle_rad), 90.0, 1e-12);
    EXPECT_TRUE(est.excluded_pairs.empty());
    for (double a : est.per_pair_range_m) EXPECT_NEAR(a, 50.0, 1e-9);
}

TEST(EstimatePosition, ClampsToMaxRange) {
    const auto scene = table1_scene(40.0);
    auto m = clean(table1_scene(), table1_target());
    EXPECT_EQ(estimate_position(scene, m).position.range_m, 40.0);
}

TEST(EstimatePosition, NegativeBrIsFloored) {
    const auto scene = table1_scene();
    auto m = clean(scene, table1_target());
    m.br_m[0] = -0.5;
    const auto est = estimate_position(scene, m);
    EXPECT_EQ(est.per_pair_range_m[0], 0.0);
}

TEST(EstimatePosition, ExcludesDegeneratePairs) {
    const Scene scene({{50.0, deg_to_rad(90.0)}, {20.0, deg_to_rad(45.0)}}, 1000.0, 100.0);
    MeasurementSet m{{0.0, 10.0}, {0.0, 0.0}, {deg_to_rad(90.0), deg_to_rad(90.0)}, {}};
    const auto est = estimate_position(scene, m);
    ASSERT_EQ(est.excluded_pairs.size(), 1u);
    EXPECT_EQ(est.excluded_pairs[0], 0u);
    EXPECT_TRUE(std::isnan(est.per_pair_range_m[0]));
    EXPECT_NEAR(est.position.range_m, single_pair_range(10.0, scene.tx(1), deg_to_rad(90.0)), 1e-12);

    const Scene one({{50.0, deg_to_rad(90.0)}}, 1000.0, 100.0);
    EXPECT_THROW(estimate_position(one, m.subset({0})), NoUsablePairs);
}

TEST(EstimatePosition, SizeMismatch) {
    const auto scene = table1_scene();
    EXPECT_THROW(estimate_position(scene, MeasurementSet{}), EmptyInput);
    EXPECT_THROW(estimate_position(scene, clean(scene, table1_target()).subset({0, 1})), std::invalid_argument);
}

TEST(EstimateVelocity, TableOneNoiseFree) {
    const auto scene = table1_scene();
    const auto est = estimate(scene, clean(scene, table1_target()));
    ASSERT_TRUE(est.velocity_part);
    const auto& v = *est.velocity_part;
    EXPECT_NEAR(v.velocity.speed_mps, 20.0, 1e-9);
    EXPECT_NEAR(rad_to_deg(v.velocity.heading_rad), 90.0, 1e-9);
    EXPECT_LT(v.residual_mps, 1e-9);
    EXPECT_LT(v.condition_number, 10.0);
    EXPECT_NEAR(v.predicted_brr_mps[1], 38.60528, 1e-5);
}

TEST(EstimateVelocity, PairSubsets) {
    const auto scene = table1_scene();
    const auto m = clean(scene, table1_target());

    const auto single = estimate(scene.with_pairs({0}), m.subset({0}));
    EXPECT_NEAR(single.position_part.position.range_m, 50.0, 1e-9);
    EXPECT_FALSE(single.velocity_part);
    EXPECT_THROW(estimate_velocity(scene.with_pairs({0}), m.subset({0}), single.position_part.position),
                 InsufficientPairs);

    const auto two = estimate(scene.with_pairs({0, 1}), m.subset({0, 1}));
    ASSERT_TRUE(two.velocity_part);
    EXPECT_NEAR(two.velocity_part->velocity.speed_mps, 20.0, 1e-9);
    EXPECT_NEAR(rad_to_deg(two.velocity_part->velocity.heading_rad), 90.0, 1e-9);
}

TEST(EstimateVelocity, ZeroBrrGivesZeroSpeed) {
    const auto scene = table1_scene();
    auto m = clean(scene, table1_target());
    m.brr_mps = {0.0, 0.0, 0.0};
    const auto v = estimate_velocity(scene, m, {50.0, deg_to_rad(90.0)});
    EXPECT_EQ(v.velocity.speed_mps, 0.0);
    EXPECT_EQ(v.velocity.heading_rad, 0.0);
    EXPECT_TRUE(v.heading_degenerate);
}

TEST(EstimateVelocity, ClampsSpeedToMax) {
    const auto scene = table1_scene(1000.0, 10.0);
    const auto m = clean(table1_scene(), table1_target());
    const auto v = estimate_velocity(scene, m, {50.0, deg_to_rad(90.0)});
    EXPECT_EQ(v.velocity.speed_mps, 10.0);
    EXPECT_TRUE(v.speed_clamped);
    EXPECT_NEAR(rad_to_deg(v.velocity.heading_rad), 90.0, 1e-9);
}

TEST(EstimateVelocity, CollocatedTxsAreSingular) {
    const Scene scene({{30.0, 0.4}, {30.0, 0.4}}, 1000.0, 100.0);
    const TargetState s{{60.0, 1.5}, {10.0, 2.0}};
    EXPECT_THROW(estimate_velocity(scene, clean(scene, s), s.position), SingularGeometry);
}

TEST(EstimateVelocity, HalfDomain) {
    const auto scene = table1_scene();
    EstimatorOptions half;
    half.heading_domain = HeadingDomain::half;
    const auto m = clean(scene, table1_target());
    const auto v = estimate_velocity(scene, m, {50.0, deg_to_rad(90.0)}, half);
    EXPECT_NEAR(rad_to_deg(v.velocity.heading_rad), 90.0, 1e-9);

    // A truth heading in the lower half plane cannot be represented.
    const TargetState down{{50.0, deg_to_rad(90.0)}, {20.0, deg_to_rad(250.0)}};
    const auto vd = estimate_velocity(scene, clean(scene, down), down.position, half);
    EXPECT_GE(vd.velocity.heading_rad, 0.0);
    EXPECT_LE(vd.velocity.heading_rad, kPi);
    // It is still the constrained optimum: no half-domain grid node does better.
    const auto grid = grid_search_velocity(scene, clean(scene, down), down.position, 201, 181, half);
    EXPECT_LE(vd.residual_mps, grid.residual_mps + 1e-9);
}

TEST(EstimateVelocity, ArcsinResolutionBreaksRoundTrip) {
    const auto scene = table1_scene();
    const auto m = clean(scene, table1_target());
    EstimatorOptions sines;
    sines.angle_resolution = AngleResolution::law_of_sines;
    const auto v = estimate_velocity(scene, m, {50.0, deg_to_rad(90.0)}, sines);
    EXPECT_GT(v.residual_mps, 1.0);
}

TEST(GridSearch, FindsNoiseFreeOptimumOnNode) {
    const auto scene = table1_scene();
    const auto m = clean(scene, table1_target());
    // 20 m/s and 90 deg are both grid nodes.
    const auto g = grid_search_velocity(scene, m, {50.0, deg_to_rad(90.0)}, 101, 360);
    EXPECT_NEAR(g.velocity.speed_mps, 20.0, 1e-9);
    EXPECT_NEAR(rad_to_deg(g.velocity.heading_rad), 90.0, 1e-9);
    EXPECT_LT(g.residual_mps, 1e-9);
}

TEST(GridSearch, LeastSquaresNeverWorseThanGrid) {
    const auto scene = table1_scene();
    const auto truth = ground_truth(scene, table1_target());
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto m = generate_trial_measurements(truth, deg_to_rad(90.0), {0.1, 0.1, 0.5}, 5, t);
        const auto pos = estimate_position(scene, m).position;
        const auto ls = estimate_velocity(scene, m, pos);
        const auto grid = grid_search_velocity(scene, m, pos, 400, 720);
        EXPECT_LE(ls.residual_mps, grid.residual_mps + 1e-12);
        EXPECT_LE(velocity_grid_cell_distance(scene, 400, 720, ls.velocity, grid.velocity), 1u);
        EXPECT_NEAR(velocity_objective(scene, m, pos, ls.velocity.speed_mps, ls.velocity.heading_rad),
                    ls.residual_mps, 1e-12);
    }
}

TEST(GridCellDistance, CircularHeading) {
    const auto scene = table1_scene();
    const PolarVelocity a{10.0, 0.0}, b{10.0, kTwoPi - deg_to_rad(0.5)};
    EXPECT_EQ(velocity_grid_cell_distance(scene, 400, 720, a, b), 1u);
    EXPECT_EQ(velocity_grid_cell_distance(scene, 400, 720, a, {10.0, deg_to_rad(2.0)}), 4u);
    EXPECT_THROW(velocity_grid_spacing(scene, 1, 10), std::invalid_argument);
}

TEST(PredictedBrr, MatchesForwardModel) {
    const auto scene = table1_scene();
    EXPECT_NEAR(predicted_brr(scene, 1, {50.0, deg_to_rad(90.0)}, 20.0, deg_to_rad(90.0)), 38.60528, 1e-5);
}

// ---- properties ----

TEST(EstimatorProperty, NoiseFreeRoundTrip) {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int k = 0; k < 500; ++k) {
        const auto scene = random_scene(rng);
        const auto s = random_target(rng, scene, 2.0, 30.0);
        const auto m = clean(scene, s);
        Estimate est;
        try {
            est = estimate(scene, m);
        } catch (const SingularGeometry&) {
            continue;
        }
        ++checked;
        EXPECT_LT(polar_distance(est.position_part.position, s.position), 1e-6) << k;
        if (est.velocity_part) {
            const auto d = sub(cart(est.velocity_part->velocity), cart(s.velocity));
            EXPECT_LT(norm(d), 1e-6) << k;
        }
    }
    EXPECT_GT(checked, 490);
}

TEST(EstimatorProperty, MorePairsDoNotHurtVelocity) {
    TrialSpec two{table1_scene().with_pairs({0, 1}), table1_target(), {0.1, 0.1, 0.5}, 2000, 3, {}};
    TrialSpec three = two;
    three.scene = table1_scene();
    const auto r2 = run_trials(two);
    const auto r3 = run_trials(three);
    ASSERT_TRUE(r2.rmse_velocity_mps && r3.rmse_velocity_mps);
    EXPECT_LE(*r3.rmse_velocity_mps, *r2.rmse_velocity_mps);
    EXPECT_LE(r3.rmse_position_m, r2.rmse_position_m * 1.05);
}

}  // namespace
