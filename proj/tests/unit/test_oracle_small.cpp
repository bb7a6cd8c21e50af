#include "negcut/energy.hpp"
#include "negcut/errors.hpp"
#include "negcut/oracle_small.hpp"
#include "reference.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace negcut {
namespace {

IndexedImage twoPixels(bool sameColor) {
    RawImage raw(2, 1);
    raw.pixels = {{0, 0, 0}, sameColor ? Rgb8{0, 0, 0} : Rgb8{255, 255, 255}};
    return quantize_gray(raw, 16);
}

TEST(SmallOracle, ConstantImageWithoutSmoothnessIsZero) {
    const RawImage raw(2, 2, Rgb8{40, 40, 40});
    const SmallOracle o = build_small_oracle(quantize_gray(raw, 16), build_smoothness(raw), 0.0);
    EXPECT_TRUE(materialize_dense(o).isZero(0.0));
    EXPECT_EQ(o.totalWeight(), 0.0);
}

TEST(SmallOracle, TwoColorsWithoutSmoothness) {
    const IndexedImage img = twoPixels(false);
    const SmallOracle o(img, empty_smoothness(2), 0.0);
    EXPECT_DOUBLE_EQ(o.weight(0, 1), -1.25);
    Eigen::MatrixXd expected(2, 2);
    expected << 0, -1.25, -1.25, 0;
    EXPECT_EQ(materialize_dense(o), expected);
}

TEST(SmallOracle, SameColorAdjacentPair) {
    const IndexedImage img = twoPixels(true);
    const SmallOracle o(img, build_smoothness(RawImage(2, 1)), 1.0);
    EXPECT_DOUBLE_EQ(o.weight(0, 1), 1.0);
}

TEST(SmallOracle, RejectsSizeMismatch) {
    EXPECT_THROW(SmallOracle(twoPixels(true), empty_smoothness(3), 1.0), InvalidArgument);
    const SmallOracle o(twoPixels(true), empty_smoothness(2), 1.0);
    EXPECT_THROW(o.matvec(std::vector<double>(3, 0.0)), InvalidArgument);
    EXPECT_THROW(cut_value(o, Labeling(1, Label::Fore)), InvalidArgument);
}

TEST(SmallOracle, MatvecExamples) {
    const RawImage raw(2, 2, Rgb8{40, 40, 40});
    const SmallOracle o(quantize_gray(raw, 16), build_smoothness(raw), 1.0);
    EXPECT_EQ(o.matvec(std::vector<double>(4, 1.0)), (std::vector<double>(4, 2.0)));
    EXPECT_EQ(o.matvec(std::vector<double>(4, 0.0)), (std::vector<double>(4, 0.0)));

    const SmallOracle two(twoPixels(false), empty_smoothness(2), 0.0);
    const auto y = two.matvec(std::vector<double>{0.3, -2.0});
    EXPECT_NEAR(y[0], -1.25 * -2.0, 1e-15);
    EXPECT_NEAR(y[1], -1.25 * 0.3, 1e-15);
}

TEST(SmallOracle, SinglePixelIsZeroMatrix) {
    const RawImage raw(1, 1, Rgb8{1, 2, 3});
    const SmallOracle o(quantize_gray(raw, 16), build_smoothness(raw), 1.0);
    EXPECT_EQ(materialize_dense(o), Eigen::MatrixXd::Zero(1, 1));
}

TEST(SmallOracle, MaterializeRespectsCap) {
    const auto scene = testing::random_gray_scene(10, 10, 1);
    const SmallOracle o(scene.indexed, build_smoothness(scene.raw), 1.0);
    EXPECT_THROW(materialize_dense(o, 99), InvalidArgument);
    EXPECT_NO_THROW(materialize_dense(o, 100));
}

TEST(SmallOracle, DenseMatchesReferenceAndIsSymmetric) {
    for (int trial = 0; trial < 20; ++trial) {
        const auto scene = testing::random_gray_scene(5 + trial % 6, 4 + trial % 5, trial, 4 + trial % 12);
        SmoothnessOptions so;
        so.mode = trial % 2 ? SmoothnessMode::Exponential : SmoothnessMode::Constant;
        so.connectivity = trial % 3 ? Connectivity::Four : Connectivity::Eight;
        const SmoothnessGraph g = build_smoothness(scene.raw, so);
        const double lambda = (trial % 3) * 2.5;
        const SmallOracle o(scene.indexed, g, lambda);
        const Eigen::MatrixXd dense = materialize_dense(o);
        EXPECT_EQ(dense, dense.transpose());
        EXPECT_TRUE(dense.diagonal().isZero(0.0));
        EXPECT_LE((dense - reference::small_weights(scene.indexed, g, lambda)).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_NEAR(o.totalWeight(), dense.sum(), 1e-9 * (1.0 + dense.cwiseAbs().sum()));
    }
}

TEST(SmallOracle, MatvecEqualsDenseProduct) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 32);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t w = dim(rng), h = std::max<std::size_t>(1, std::min<std::size_t>(dim(rng), 1024 / w));
        const auto scene = testing::random_gray_scene(w, h, trial, 2 + trial % 30);
        const double lambda = std::array{0.0, 1.0, 10.0}[trial % 3];
        const SmoothnessGraph g = build_smoothness(scene.raw);
        const SmallOracle o(scene.indexed, g, lambda);
        const Eigen::MatrixXd dense = reference::small_weights(scene.indexed, g, lambda);

        const auto r = testing::random_vector(scene.indexed.total(), rng);
        const auto y = o.matvec(r);
        const Eigen::VectorXd expected = dense * Eigen::Map<const Eigen::VectorXd>(r.data(), Eigen::Index(r.size()));
        double rInf = 0.0;
        for (double v : r) rInf = std::max(rInf, std::abs(v));
        for (std::size_t k = 0; k < y.size(); ++k)
            ASSERT_LE(std::abs(y[k] - expected(Eigen::Index(k))), 1e-9 * (1.0 + rInf)) << "trial " << trial;
    }
}

TEST(SmallOracle, MatvecIsLinear) {
    std::mt19937_64 rng(12);
    const auto scene = testing::random_gray_scene(17, 13, 3);
    const SmallOracle o(scene.indexed, build_smoothness(scene.raw), 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = testing::random_vector(o.size(), rng);
        const auto s = testing::random_vector(o.size(), rng);
        const double a = 1.7, b = -0.4;
        std::vector<double> combo(o.size());
        for (std::size_t k = 0; k < combo.size(); ++k) combo[k] = a * r[k] + b * s[k];
        const auto lhs = o.matvec(combo);
        const auto yr = o.matvec(r), ys = o.matvec(s);
        for (std::size_t k = 0; k < combo.size(); ++k) EXPECT_NEAR(lhs[k], a * yr[k] + b * ys[k], 1e-9);
    }
}

TEST(CutValue, Examples) {
    const SmallOracle two(twoPixels(false), empty_smoothness(2), 0.0);
    EXPECT_NEAR(cut_value(two, Labeling(2, Label::Fore)), 0.0, 1e-15);
    EXPECT_NEAR(cut_value(two, Labeling({Label::Fore, Label::Back})), -1.25, 1e-15);
}

TEST(CutValue, MatchesBruteForcePairSum) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const auto scene = testing::random_gray_scene(3 + trial % 8, 2 + trial % 7, trial, 3 + trial % 10);
        const SmoothnessGraph g = build_smoothness(scene.raw);
        const SmallOracle o(scene.indexed, g, double(trial % 4));
        const Labeling l = testing::random_labeling(o.size(), rng);
        EXPECT_NEAR(cut_value(o, l), reference::cut(materialize_dense(o), l), 1e-10);
        EXPECT_NEAR(cut_value(o, l), cut_value(o, l.flipped()), 1e-10);
    }
}

TEST(CutValue, DiffersFromApproxEnergyByConstant) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const auto scene = testing::random_gray_scene(4 + trial % 9, 3 + trial % 6, trial, 2 + trial % 14);
        const SmoothnessGraph g = build_smoothness(scene.raw);
        const double lambda = double(trial % 5);
        const SmallOracle o(scene.indexed, g, lambda);
        const Labeling l1 = testing::random_labeling(o.size(), rng);
        const Labeling l2 = testing::random_labeling(o.size(), rng);
        const double dEnergy = approx_energy(scene.indexed, l1, g, lambda) - approx_energy(scene.indexed, l2, g, lambda);
        const double dCut = cut_value(o, l1) - cut_value(o, l2);
        EXPECT_NEAR(dEnergy, dCut, 1e-8);
    }
}

double bestMatvecSeconds(std::size_t side, int repeats) {
    const auto scene = testing::random_gray_scene(side, side, 77, 16);
    const SmallOracle o(scene.indexed, build_smoothness(scene.raw), 1.0);
    std::vector<double> r(o.size(), 0.5), y(o.size());
    o.apply(r, y);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < repeats; ++rep) {
        const auto t = std::chrono::steady_clock::now();
        for (int i = 0; i < 200; ++i) {
            o.apply(r, y);
            r[std::size_t(i)] = y[std::size_t(i)] * 1e-6;
        }
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count());
    }
    return best;
}

TEST(SmallOracle, MatvecCostScalesLinearly) {
    // 128x128 -> 181x181 is ~2x the pixels at the same class count.
    const double small = bestMatvecSeconds(128, 5);
    const double large = bestMatvecSeconds(181, 5);
    EXPECT_LE(large / small, 2.75) << "small=" << small << "s large=" << large << "s";
}

}  // namespace
}  // namespace negcut
