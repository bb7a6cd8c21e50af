#include "cli.hpp"
#include "negcut/image.hpp"
#include "negcut/synthetic.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

namespace negcut::cli {
namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome runArgs(std::vector<std::string> args) {
    args.insert(args.begin(), "negcut");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> statsMap(const std::filesystem::path& p) {
    std::map<std::string, std::string> m;
    for (auto& [k, v] : read_stats(p)) m[k] = v;
    return m;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        input = dir / "in.ppm";
        write_image(two_block_image(32, 32, {40, 40, 40}, {210, 210, 210}), input);
    }
    negcut::testing::TempDir dir;
    std::filesystem::path input;
};

TEST_F(CliTest, SegmentTwoBlockGray) {
    const auto res = runArgs({"segment", "-i", input.string(), "-o", (dir / "mask.pgm").string(), "--stats",
                              (dir / "stats.txt").string(), "--overlay", (dir / "ov.ppm").string()});
    ASSERT_EQ(res.code, kOk) << res.err;
    const Labeling mask = load_mask(dir / "mask.pgm");
    const Labeling truth = two_block_truth(32, 32);
    EXPECT_TRUE(mask == truth || mask == truth.flipped());
    EXPECT_EQ(load_image(dir / "ov.ppm").width, 32u);

    const auto s = statsMap(dir / "stats.txt");
    for (const char* key : {"eigenvalue", "iterations", "residual", "exact_energy", "approx_energy", "cut_value", "s0",
                            "s1", "boundary_edges", "time_total_s"})
        EXPECT_TRUE(s.count(key)) << key;
    EXPECT_EQ(s.at("s0"), "512");
    EXPECT_EQ(s.at("s1"), "512");
    EXPECT_EQ(std::stoul(s.at("s0")) + std::stoul(s.at("s1")), std::stoul(s.at("n")));
    EXPECT_EQ(s.at("boundary_edges"), "32");
    EXPECT_EQ(s.at("converged"), "1");
}

TEST_F(CliTest, SegmentColorMode) {
    write_image(two_block_image(24, 20, {200, 30, 30}, {30, 30, 200}), input);
    const auto res = runArgs({"segment", "-i", input.string(), "-o", (dir / "mask.pgm").string(), "--mode", "color",
                              "--stats", (dir / "stats.txt").string()});
    ASSERT_EQ(res.code, kOk) << res.err;
    const Labeling mask = load_mask(dir / "mask.pgm");
    const Labeling truth = two_block_truth(24, 20);
    EXPECT_TRUE(mask == truth || mask == truth.flipped());
    EXPECT_TRUE(statsMap(dir / "stats.txt").count("sigma2"));
}

TEST_F(CliTest, LargerLambdaDoesNotRoughenBoundary) {
    write_image(two_block_image(32, 32, {70, 70, 70}, {180, 180, 180}, 40.0, 7), input);
    std::size_t boundary[2];
    int i = 0;
    for (const char* lambda : {"1", "10"}) {
        const auto stats = dir / (std::string("s") + lambda);
        const auto res = runArgs({"segment", "-i", input.string(), "-o", (dir / "m.pgm").string(), "--lambda", lambda,
                                  "--stats", stats.string()});
        ASSERT_EQ(res.code, kOk) << res.err;
        boundary[i++] = std::stoul(statsMap(stats).at("boundary_edges"));
    }
    EXPECT_LE(boundary[1], boundary[0]);
}

TEST_F(CliTest, MissingInputIsIoErrorAndWritesNothing) {
    const auto res = runArgs({"segment", "-i", (dir / "nope.ppm").string(), "-o", (dir / "mask.pgm").string(), "--stats",
                              (dir / "stats.txt").string()});
    EXPECT_EQ(res.code, kIoError);
    EXPECT_FALSE(std::filesystem::exists(dir / "mask.pgm"));
    EXPECT_FALSE(std::filesystem::exists(dir / "stats.txt"));
}

TEST_F(CliTest, BadConfigIsConfigError) {
    const auto mask = (dir / "mask.pgm").string();
    EXPECT_EQ(runArgs({"segment", "-i", input.string(), "-o", mask, "--lambda", "-1"}).code, kConfigError);
    EXPECT_EQ(runArgs({"segment", "-i", input.string(), "-o", mask, "--mode", "hsv"}).code, kConfigError);
    EXPECT_EQ(runArgs({"segment", "-i", input.string(), "-o", mask, "--sigma2", "x"}).code, kConfigError);
    EXPECT_EQ(runArgs({"segment", "-i", input.string(), "-o", mask, "--connectivity", "6"}).code, kConfigError);
    EXPECT_EQ(runArgs({"segment", "-i", input.string()}).code, kConfigError);
    EXPECT_EQ(runArgs({}).code, kConfigError);
}

TEST_F(CliTest, StatsAreDeterministicWithoutTimings) {
    std::vector<std::uint8_t> bytes[2];
    for (int i = 0; i < 2; ++i) {
        const auto stats = dir / ("s" + std::to_string(i));
        ASSERT_EQ(runArgs({"segment", "-i", input.string(), "-o", (dir / "m.pgm").string(), "--no-timings", "--stats",
                           stats.string()})
                      .code,
                  kOk);
        bytes[i] = negcut::testing::read_bytes(stats);
        EXPECT_FALSE(statsMap(stats).count("time_total_s"));
    }
    EXPECT_EQ(bytes[0], bytes[1]);
}

TEST_F(CliTest, MaskUsesResizedDimensions) {
    write_image(two_block_image(40, 20, {0, 0, 0}, {255, 255, 255}), input);
    ASSERT_EQ(runArgs({"segment", "-i", input.string(), "-o", (dir / "m.pgm").string(), "--max-dim", "20"}).code, kOk);
    const RawImage mask = load_image(dir / "m.pgm");
    EXPECT_EQ(mask.width, 20u);
    EXPECT_EQ(mask.height, 10u);
}

TEST(CliPartition, Outputs) {
    auto yes = runArgs({"partition", "1,2,3"});
    EXPECT_EQ(yes.code, kOk);
    EXPECT_NE(yes.out.find("YES"), std::string::npos);
    EXPECT_NE(yes.out.find("min_energy=1.90954"), std::string::npos);
    EXPECT_NE(yes.out.find("target=1.90954"), std::string::npos);

    auto no = runArgs({"partition", "1,1,4"});
    EXPECT_EQ(no.code, kOk);
    EXPECT_EQ(no.out.rfind("NO", 0), 0u);
    EXPECT_NE(no.out.find("target=1.04649628753"), std::string::npos);

    EXPECT_EQ(runArgs({"partition", "3"}).out.rfind("NO", 0), 0u);
    EXPECT_EQ(runArgs({"partition", "1,x"}).code, kConfigError);
}

TEST(CliBench, Validation) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_bench({256}, 0, out, err), kConfigError);
    EXPECT_EQ(cmd_bench({1024, 256}, 1, out, err), kConfigError);
    EXPECT_EQ(cmd_bench({}, 1, out, err), kConfigError);
}

TEST(CliBench, SingleSizeHasNoRatio) {
    std::ostringstream out, err;
    std::vector<BenchRow> rows;
    ASSERT_EQ(cmd_bench({256}, 1, out, err, &rows), kOk);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].n, 256u);
    EXPECT_FALSE(rows[0].ratio.has_value());
    EXPECT_GT(rows[0].matvecSeconds, 0.0);

    rows.clear();
    ASSERT_EQ(cmd_bench({256, 1024}, 1, out, err, &rows), kOk);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[1].ratio.has_value());
    EXPECT_GE(rows[1].n, 1000u);
}

}  // namespace
}  // namespace negcut::cli
