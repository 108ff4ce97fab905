#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"
#include "msloc/measurement.hpp"
#include "msloc/random.hpp"
#include "test_support.hpp"

using namespace msloc;
using namespace msloc::testing;

namespace {

std::vector<PairTruth> table1_truth() { return ground_truth(table1_scene(), table1_target()); }

TEST(RandomStream, KnownFirstOutputs) {
    // SplitMix64 reference values for seed 0.
    RandomStream s(0);
    EXPECT_EQ(s.next_u64(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(s.next_u64(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(s.next_u64(), 0x06c45d188009454fULL);
}

TEST(RandomStream, UniformInUnitInterval) {
    RandomStream s(5);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.next_uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LE(u, 1.0);
    }
}

TEST(RandomStream, DerivedStreamsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        for (std::uint64_t ch = 0; ch < 3; ++ch) firsts.insert(derive_stream(7, trial, ch).next_u64());
    }
    EXPECT_EQ(firsts.size(), 150u);
    EXPECT_NE(derive_point_seed(7, 0), derive_point_seed(7, 1));
    EXPECT_NE(derive_stream(7, 0, NoiseChannel::br).next_u64(), derive_stream(8, 0, NoiseChannel::br).next_u64());
}

TEST(GenerateMeasurements, ZeroNoisePassesTruthThrough) {
    const auto truth = table1_truth();
    RandomStream s(1);
    const auto m = generate_measurements(truth, deg_to_rad(90.0), {}, s);
    ASSERT_EQ(m.pair_count(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(m.br_m[i], truth[i].bistatic_range_m);
        EXPECT_EQ(m.brr_mps[i], truth[i].bistatic_range_rate_mps);
        EXPECT_EQ(m.doa_rad[i], deg_to_rad(90.0));
    }
}

TEST(GenerateMeasurements, SameStreamStateSameOutput) {
    const auto truth = table1_truth();
    const NoiseSpec noise{0.1, 0.1, 0.5};
    RandomStream a(42), b(42);
    EXPECT_EQ(generate_measurements(truth, 1.0, noise, a), generate_measurements(truth, 1.0, noise, b));
    EXPECT_EQ(generate_trial_measurements(truth, 1.0, noise, 3, 9), generate_trial_measurements(truth, 1.0, noise, 3, 9));
    EXPECT_NE(generate_trial_measurements(truth, 1.0, noise, 3, 9), generate_trial_measurements(truth, 1.0, noise, 3, 10));
}

TEST(GenerateMeasurements, DrawOrderIsBrThenBrrThenDoa) {
    const auto truth = table1_truth();
    const NoiseSpec noise{1.0, 2.0, rad_to_deg(3.0)};
    RandomStream s(99), ref(99);
    const auto m = generate_measurements(truth, 0.5, noise, s);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(m.br_m[i], truth[i].bistatic_range_m + ref.next_gaussian());
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_DOUBLE_EQ(m.brr_mps[i], truth[i].bistatic_range_rate_mps + 2.0 * ref.next_gaussian());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(m.doa_rad[i], 0.5 + 3.0 * ref.next_gaussian(), 1e-12);
}

TEST(GenerateMeasurements, SingleChannelNoiseLeavesOthersExact) {
    const auto truth = table1_truth();
    const auto m = generate_trial_measurements(truth, 1.0, {0.0, 0.3, 0.0}, 0, 0);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(m.br_m[i], truth[i].bistatic_range_m);
        EXPECT_NE(m.brr_mps[i], truth[i].bistatic_range_rate_mps);
        EXPECT_EQ(m.doa_rad[i], 1.0);
    }
}

TEST(GenerateMeasurements, DoaNoiseStatistics) {
    const std::vector<PairTruth> truth(1, table1_truth()[0]);
    const double theta0 = deg_to_rad(90.0);
    const double sigma = deg_to_rad(1.0);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = generate_trial_measurements(truth, theta0, {0.0, 0.0, 1.0}, 17, static_cast<std::uint64_t>(k))
                             .doa_rad[0] -
                         theta0;
        sum += e;
        sq += e * e;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    EXPECT_LT(std::abs(mean), 4.0 * sigma / std::sqrt(double(n)));
    EXPECT_NEAR(sd / sigma, 1.0, 0.02);
}

TEST(GenerateMeasurements, EmptyTruthThrows) {
    RandomStream s(0);
    EXPECT_THROW(generate_measurements({}, 0.0, {}, s), EmptyTruth);
}

TEST(NoiseSpec, RejectsNegativeSigmaByField) {
    try {
        NoiseSpec{-1.0, 0.0, 0.0}.validate();
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "noise.sigma_br_m");
    }
    EXPECT_THROW((NoiseSpec{0.0, NAN, 0.0}.validate()), ValidationError);
    EXPECT_THROW((NoiseSpec{0.0, 0.0, -0.1}.validate()), ValidationError);
    EXPECT_NO_THROW((NoiseSpec{0.0, 0.0, 0.0}.validate()));
}

TEST(MeasurementSet, SubsetKeepsListedPairs) {
    RandomStream s(0);
    const auto m = generate_measurements(table1_truth(), 1.0, {0.1, 0.1, 0.5}, s);
    const auto sub = m.subset({2, 0});
    ASSERT_EQ(sub.pair_count(), 2u);
    EXPECT_EQ(sub.br_m[0], m.br_m[2]);
    EXPECT_EQ(sub.brr_mps[1], m.brr_mps[0]);
    EXPECT_EQ(sub.doa_rad[0], m.doa_rad[2]);
}

}  // namespace
