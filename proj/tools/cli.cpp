#include "cli.hpp"

#include "negcut/errors.hpp"
#include "negcut/hardness.hpp"
#include "negcut/oracle_small.hpp"
#include "negcut/segment.hpp"
#include "negcut/synthetic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace negcut::cli {

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shortest round-trip representation; identical inputs give identical text.
std::string formatDouble(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class StatsWriter {
public:
    template <typename T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        if constexpr (std::is_floating_point_v<T>)
            os << formatDouble(value);
        else
            os << value;
        lines_ += key + "=" + os.str() + "\n";
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ImageError(ImageError::Kind::WriteFailed, path.string() + ": cannot open for writing");
        out << lines_;
        if (!out) throw ImageError(ImageError::Kind::WriteFailed, path.string() + ": write failed");
    }

private:
    std::string lines_;
};

RawImage overlay(const RawImage& img, const Labeling& labeling) {
    RawImage out = img;
    for (std::size_t p = 0; p < out.size(); ++p) {
        if (!labeling.isFore(p)) continue;
        auto& c = out.pixels[p];
        c = {std::uint8_t((c.r + 255) / 2), std::uint8_t(c.g / 2), std::uint8_t(c.b / 2)};
    }
    return out;
}

const char* modeName(PipelineMode m) { return m == PipelineMode::Gray ? "gray" : "color"; }

}  // namespace

void validate(const RunConfig& c) {
    if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) throw InvalidArgument("--lambda must be a finite value >= 0");
    if (c.grayLevels < 2 || c.grayLevels > 256) throw InvalidArgument("--gray-levels must be in [2, 256]");
    if (c.classes < 1) throw InvalidArgument("--classes must be >= 1");
    if (c.sigma2 && !(*c.sigma2 > 0.0)) throw InvalidArgument("--sigma2 must be positive or 'auto'");
    if (!(c.smoothnessOffset >= 0.0)) throw InvalidArgument("--smoothness-offset must be >= 0");
    if (c.maxDim < 1) throw InvalidArgument("--max-dim must be >= 1");
    if (!(c.tol > 0.0)) throw InvalidArgument("--tol must be positive");
    if (c.input.empty()) throw InvalidArgument("--input is required");
    if (c.output.empty()) throw InvalidArgument("--output is required");
}

int cmd_segment(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    const auto start = Clock::now();
    RawImage raw;
    try {
        raw = resize_max(load_image(config.input), config.maxDim);
    } catch (const ImageError& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    }
    const double tLoad = secondsSince(start);

    SegmentationResult result;
    IndexedImage indexed;
    double sigma2 = 0.0;
    double tIndex = 0.0, tGraph = 0.0, tSolve = 0.0;
    try {
        auto t = Clock::now();
        SegmentParams params;
        params.lambda = config.lambda;
        params.lanczos.tol = config.tol;
        params.lanczos.seed = config.seed;
        if (config.mode == PipelineMode::Gray) {
            indexed = quantize_gray(raw, config.grayLevels);
            params.space = ColorSpace::Small;
        } else {
            indexed = kmeans_cluster(raw, {std::min(config.classes, raw.size()), config.seed, 100});
            sigma2 = config.sigma2 ? *config.sigma2 : estimate_sigma(raw);
            params.space = ColorSpace::Large;
            params.kernel = {sigma2, config.estimator};
        }
        tIndex = secondsSince(t);

        t = Clock::now();
        SmoothnessOptions so;
        so.connectivity = config.connectivity;
        so.mode = config.smoothnessMode;
        so.offset = config.smoothnessOffset;
        const SmoothnessGraph graph = build_smoothness(raw, so);
        tGraph = secondsSince(t);

        t = Clock::now();
        result = segment(indexed, graph, params);
        tSolve = secondsSince(t);
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kConvergenceError;
    }

    try {
        write_mask(result.labeling, raw.width, raw.height, config.output);
        if (config.overlay) write_image(overlay(raw, result.labeling), *config.overlay);
        if (config.stats) {
            StatsWriter s;
            s.add("mode", std::string(modeName(config.mode)));
            s.add("width", raw.width);
            s.add("height", raw.height);
            s.add("n", raw.size());
            s.add("classes", indexed.classCount());
            s.add("lambda", config.lambda);
            if (config.mode == PipelineMode::Color) s.add("sigma2", sigma2);
            s.add("eigenvalue", result.eigen.eigenvalue);
            s.add("iterations", result.eigen.iterations);
            s.add("residual", result.eigen.residualNorm);
            s.add("converged", int(result.eigen.converged));
            s.add("data_term", result.exact.dataTerm);
            s.add("smoothness_term", result.exact.smoothnessTerm);
            s.add("exact_energy", result.exact.total);
            s.add("approx_energy", result.approxEnergy);
            s.add("cut_value", result.cutValue);
            s.add("s0", result.foreCount);
            s.add("s1", result.backCount);
            s.add("boundary_edges", result.boundaryEdges);
            if (config.timings) {
                s.add("time_load_s", tLoad);
                s.add("time_index_s", tIndex);
                s.add("time_graph_s", tGraph);
                s.add("time_solve_s", tSolve);
                s.add("time_total_s", secondsSince(start));
            }
            s.write(*config.stats);
        }
    } catch (const Error& e) {
        err << "io error: " << e.what() << "\n";
        return kIoError;
    }

    out << "segmented " << raw.width << "x" << raw.height << " (" << modeName(config.mode) << "): s0=" << result.foreCount
        << " s1=" << result.backCount << " eigenvalue=" << formatDouble(result.eigen.eigenvalue)
        << " exact_energy=" << formatDouble(result.exact.total) << "\n";
    if (!result.eigen.converged) {
        err << "warning: eigensolver did not converge (residual " << result.eigen.residualNorm << ")\n";
        return kConvergenceError;
    }
    return kOk;
}

int cmd_partition(const std::string& values, std::ostream& out, std::ostream& err) {
    try {
        const PartitionInstance inst = PartitionInstance::parse(values);
        const bool yes = decide_partition(inst);
        out << (yes ? "YES" : "NO") << "\n";
        out << std::setprecision(12);
        out << "min_energy=" << brute_force_blocks(inst) << "\n";
        out << "target=" << partition_target(inst) << "\n";
        return kOk;
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

int cmd_bench(const std::vector<std::size_t>& sizes, std::size_t repeats, std::ostream& out, std::ostream& err,
              std::vector<BenchRow>* rowsOut) {
    if (repeats == 0) {
        err << "config error: --repeats must be >= 1\n";
        return kConfigError;
    }
    if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end()) || sizes.front() < 1) {
        err << "config error: --sizes must be a nonempty ascending list of positive pixel counts\n";
        return kConfigError;
    }

    std::vector<BenchRow> rows;
    out << std::left << std::setw(10) << "n" << std::setw(16) << "matvec_us" << std::setw(16) << "segment_ms"
        << "ratio\n";
    for (std::size_t n : sizes) {
        // Most nearly square width x height == n.
        std::size_t height = std::size_t(std::sqrt(double(n)));
        while (n % height != 0) --height;
        const std::size_t width = n / height;

        const RawImage raw = two_block_image(width, height, {60, 60, 60}, {190, 190, 190}, 25.0, 7);
        const IndexedImage img = quantize_gray(raw, 16);
        const SmoothnessGraph graph = build_smoothness(raw);
        const SmallOracle oracle(img, graph, 1.0);

        std::vector<double> r(n), y(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = std::sin(double(k));
        // Roughly equal work per timing window across sizes, at least 64 products.
        const std::size_t products = std::max<std::size_t>(64, (std::size_t(1) << 23) / n);
        for (int i = 0; i < 8; ++i) oracle.apply(r, y);

        BenchRow row;
        row.n = n;
        row.matvecSeconds = row.segmentSeconds = std::numeric_limits<double>::infinity();
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            auto t = Clock::now();
            for (std::size_t i = 0; i < products; ++i) {
                oracle.apply(r, y);
                r[i % n] += 1e-3 * y[(i * 7) % n];  // keep the loop observable
            }
            row.matvecSeconds = std::min(row.matvecSeconds, secondsSince(t) / double(products));

            t = Clock::now();
            SegmentParams params;
            (void)segment(img, graph, params);
            row.segmentSeconds = std::min(row.segmentSeconds, secondsSince(t));
        }
        if (!rows.empty()) row.ratio = row.matvecSeconds / rows.back().matvecSeconds;
        rows.push_back(row);

        out << std::left << std::setw(10) << n << std::setw(16) << std::fixed << std::setprecision(2)
            << row.matvecSeconds * 1e6 << std::setw(16) << row.segmentSeconds * 1e3;
        if (row.ratio)
            out << std::setprecision(3) << *row.ratio;
        else
            out << "-";
        out << "\n" << std::defaultfloat;
    }
    if (rowsOut) *rowsOut = std::move(rows);
    return kOk;
}

std::vector<std::pair<std::string, std::string>> read_stats(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ImageError(ImageError::Kind::Unreadable, path.string() + ": cannot open stats file");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"negcut: automatic binary segmentation by largest-eigenvector cuts on negative-weight graphs"};
    app.require_subcommand(1);

    RunConfig config;
    std::string sigma2Text = "auto";
    auto* seg = app.add_subcommand("segment", "Segment a P5/P6 image into fore/back");
    seg->add_option("--input,-i", config.input, "Input PGM/PPM (maxval 255)")->required();
    seg->add_option("--output,-o", config.output, "Output mask (P5, fore=255)")->required();
    seg->add_option("--overlay", config.overlay, "Optional overlay PPM with foreground tinted red");
    seg->add_option("--stats", config.stats, "Optional key=value stats file");
    seg->add_option("--mode", config.mode, "gray (histogram weights) or color (kernel weights)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, PipelineMode>{{"gray", PipelineMode::Gray},
                                                                                {"color", PipelineMode::Color}},
                                            CLI::ignore_case))
        ->option_text("gray|color [gray]");
    seg->add_option("--lambda", config.lambda, "Smoothness factor")->capture_default_str();
    seg->add_option("--gray-levels", config.grayLevels, "Gray quantization levels (gray mode)")->capture_default_str();
    seg->add_option("--classes", config.classes, "k-means color classes (color mode)")->capture_default_str();
    seg->add_option("--sigma2", sigma2Text, "Kernel variance, or 'auto'")->capture_default_str();
    seg->add_option("--connectivity", config.connectivity, "4 or 8")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Connectivity>{{"4", Connectivity::Four}, {"8", Connectivity::Eight}}))
        ->option_text("4|8 [4]");
    seg->add_option("--smoothness-mode", config.smoothnessMode, "constant or exponential")
        ->transform(CLI::CheckedTransformer(std::map<std::string, SmoothnessMode>{
                                                {"constant", SmoothnessMode::Constant},
                                                {"exponential", SmoothnessMode::Exponential}},
                                            CLI::ignore_case))
        ->option_text("constant|exponential [constant]");
    seg->add_option("--smoothness-offset", config.smoothnessOffset, "Constant added to every smoothness weight")
        ->capture_default_str();
    seg->add_option("--estimator", config.estimator, "paper or consistent (color mode)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Estimator>{{"paper", Estimator::Paper}, {"consistent", Estimator::Consistent}},
            CLI::ignore_case))
        ->option_text("paper|consistent [consistent]");
    seg->add_option("--max-dim", config.maxDim, "Downscale so the longer side is at most this")->capture_default_str();
    seg->add_option("--seed", config.seed, "Seed for k-means and the Lanczos start vector")->capture_default_str();
    seg->add_option("--tol", config.tol, "Eigen residual tolerance")->capture_default_str();
    bool noTimings = false;
    seg->add_flag("--no-timings", noTimings, "Omit wall-clock lines from the stats file");

    std::string values;
    auto* part = app.add_subcommand("partition", "Decide set partition through the energy reduction");
    part->add_option("values", values, "Comma-separated positive integers, e.g. 1,2,3")->required();

    std::vector<std::size_t> sizes{4096, 16384};
    std::size_t repeats = 5;
    auto* bench = app.add_subcommand("bench", "Time oracle products and full segmentation");
    bench->add_option("--sizes", sizes, "Ascending pixel counts")->delimiter(',')->capture_default_str();
    bench->add_option("--repeats", repeats, "Best-of repeats")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    if (*seg) {
        if (sigma2Text != "auto") {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(sigma2Text.data(), sigma2Text.data() + sigma2Text.size(), v);
            if (ec != std::errc() || ptr != sigma2Text.data() + sigma2Text.size()) {
                err << "config error: --sigma2 must be a number or 'auto'\n";
                return kConfigError;
            }
            config.sigma2 = v;
        }
        config.timings = !noTimings;
        return cmd_segment(config, out, err);
    }
    if (*part) return cmd_partition(values, out, err);
    return cmd_bench(sizes, repeats, out, err);
}

}  // namespace negcut::cli
