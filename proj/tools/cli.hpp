#pragma once

#include "negcut/oracle_large.hpp"
#include "negcut/smoothness.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace negcut::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kConvergenceError = 4 };

enum class PipelineMode { Gray, Color };

struct RunConfig {
    PipelineMode mode = PipelineMode::Gray;
    double lambda = 1.0;
    unsigned grayLevels = 16;
    std::size_t classes = 16;
    std::optional<double> sigma2;  // empty = estimate from the image
    Connectivity connectivity = Connectivity::Four;
    SmoothnessMode smoothnessMode = SmoothnessMode::Constant;
    double smoothnessOffset = 0.0;
    Estimator estimator = Estimator::Consistent;
    std::size_t maxDim = 256;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    bool timings = true;  // wall-clock lines in the stats file

    std::filesystem::path input;
    std::filesystem::path output;
    std::optional<std::filesystem::path> overlay;
    std::optional<std::filesystem::path> stats;
};

/// Throws negcut::InvalidArgument describing the first bad field.
void validate(const RunConfig& config);

int cmd_segment(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_partition(const std::string& values, std::ostream& out, std::ostream& err);

struct BenchRow {
    std::size_t n = 0;
    double matvecSeconds = 0.0;   // best-of-repeats time per product
    double segmentSeconds = 0.0;  // best-of-repeats full pipeline
    std::optional<double> ratio;  // matvec time relative to the previous row
};

/// Times the histogram oracle product and the full pipeline on synthetic
/// gray images of the requested pixel counts.
int cmd_bench(const std::vector<std::size_t>& sizes, std::size_t repeats, std::ostream& out, std::ostream& err,
              std::vector<BenchRow>* rows = nullptr);

/// Parses a `key=value` stats file.
std::vector<std::pair<std::string, std::string>> read_stats(const std::filesystem::path& path);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace negcut::cli
