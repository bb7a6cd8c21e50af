#include "negcut/oracle_large.hpp"

#include "negcut/energy.hpp"
#include "negcut/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace negcut {

// ---------------------------------------------------------------------------
// k-means

namespace {

// Nearest centroid; ties go to the lowest index.
std::uint32_t nearest(const RgbF& c, const std::vector<RgbF>& centroids, double* bestDist = nullptr) {
    std::uint32_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.size(); ++j) {
        const double d = squared_distance(c, centroids[j]);
        if (d < bd) {
            bd = d;
            best = std::uint32_t(j);
        }
    }
    if (bestDist) *bestDist = bd;
    return best;
}

std::vector<RgbF> seedPlusPlus(const std::vector<RgbF>& colors, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = colors.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<RgbF> centroids;
    centroids.reserve(k);
    centroids.push_back(colors[std::min<std::size_t>(n - 1, std::size_t(unit(rng) * double(n)))]);

    std::vector<double> d2(n);
    for (std::size_t p = 0; p < n; ++p) d2[p] = squared_distance(colors[p], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t p = 0; p < n; ++p) {
                acc += d2[p];
                if (acc > target && d2[p] > 0.0) {
                    pick = p;
                    break;
                }
            }
        }
        // With total == 0 every remaining centroid duplicates an existing one;
        // those classes stay empty and are compacted at the end.
        centroids.push_back(colors[pick]);
        for (std::size_t p = 0; p < n; ++p) d2[p] = std::min(d2[p], squared_distance(colors[p], centroids.back()));
    }
    return centroids;
}

}  // namespace

IndexedImage kmeans_cluster(const RawImage& img, const KMeansOptions& options) {
    const std::size_t n = img.size();
    const std::size_t k = options.classes;
    if (k < 1) throw InvalidArgument("kmeans_cluster: need at least one class");
    if (k > n) throw InvalidArgument("kmeans_cluster: more classes than pixels");

    std::vector<RgbF> colors(n);
    std::transform(img.pixels.begin(), img.pixels.end(), colors.begin(), to_float);

    std::mt19937_64 rng(options.seed);
    std::vector<RgbF> centroids = seedPlusPlus(colors, k, rng);
    std::vector<std::uint32_t> assign(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<double> dist(n, 0.0);

    for (std::size_t iter = 0; iter < std::max<std::size_t>(1, options.maxIter); ++iter) {
        bool changed = false;
        for (std::size_t p = 0; p < n; ++p) {
            const auto c = nearest(colors[p], centroids, &dist[p]);
            if (c != assign[p]) {
                assign[p] = c;
                changed = true;
            }
        }

        std::vector<RgbF> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t p = 0; p < n; ++p) {
            sums[assign[p]].r += colors[p].r;
            sums[assign[p]].g += colors[p].g;
            sums[assign[p]].b += colors[p].b;
            ++counts[assign[p]];
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] == 0) continue;
            const double c = double(counts[j]);
            centroids[j] = {sums[j].r / c, sums[j].g / c, sums[j].b / c};
        }

        // Re-seed empty clusters from the point farthest from its centroid.
        for (std::size_t j = 0; j < k; ++j) {
            if (counts[j] != 0) continue;
            const auto far = std::size_t(std::max_element(dist.begin(), dist.end()) - dist.begin());
            if (dist[far] <= 0.0) break;  // every point sits on a centroid
            --counts[assign[far]];
            centroids[j] = colors[far];
            assign[far] = std::uint32_t(j);
            counts[j] = 1;
            dist[far] = 0.0;
            changed = true;
        }

        if (!changed) break;
    }

    return IndexedImage::compact(img.width, img.height, std::move(assign), colors);
}

double estimate_sigma(const RawImage& img) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const RgbF c = to_float(img.at(x, y));
            if (x + 1 < img.width) {
                sum += squared_distance(c, to_float(img.at(x + 1, y)));
                ++count;
            }
            if (y + 1 < img.height) {
                sum += squared_distance(c, to_float(img.at(x, y + 1)));
                ++count;
            }
        }
    }
    return std::max(1.0, count ? sum / double(count) : 0.0);
}

// ---------------------------------------------------------------------------
// Kernel model

double kernel_density(double sigma2, const RgbF& fromColor, const RgbF& atColor) {
    if (!(sigma2 > 0.0)) throw InvalidArgument("kernel_density: sigma2 must be positive");
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma2);
    return norm * std::exp(-squared_distance(fromColor, atColor) / (2.0 * sigma2));
}

KernelModel build_class_kernel(const IndexedImage& img, double sigma2, Estimator estimator) {
    const std::size_t m = img.classCount();
    if (m < 1) throw InvalidArgument("build_class_kernel: image has no classes");
    if (!(sigma2 > 0.0)) throw InvalidArgument("build_class_kernel: sigma2 must be positive");

    KernelModel model;
    model.sigma2 = sigma2;
    model.classMeans = img.means;
    model.classCounts = img.counts;
    model.estimator = estimator;

    // density(a, k): Pr of class-a centroid evaluated at the class-k sample.
    const auto M = Eigen::Index(m);
    Eigen::MatrixXd density(M, M);
    for (Eigen::Index a = 0; a < M; ++a)
        for (Eigen::Index k = 0; k < M; ++k)
            density(a, k) = kernel_density(sigma2, img.means[std::size_t(a)], img.means[std::size_t(k)]);

    // denom(k) = sum_j Pr_j(k) over all pixels j.
    Eigen::VectorXd counts(M);
    for (Eigen::Index a = 0; a < M; ++a) counts(a) = double(img.counts[std::size_t(a)]);
    const Eigen::VectorXd denom = density.transpose() * counts;

    // Per-sample weight: multiplicity / denom (paper) or multiplicity / denom^2.
    Eigen::VectorXd sampleWeight(M);
    for (Eigen::Index k = 0; k < M; ++k) {
        const double d = estimator == Estimator::Paper ? denom(k) : denom(k) * denom(k);
        sampleWeight(k) = counts(k) / d;
    }

    Eigen::MatrixXd w2 = 2.5 * density * sampleWeight.asDiagonal() * density.transpose();
    model.classPairW2 = 0.5 * (w2 + w2.transpose());
    if (!model.classPairW2.allFinite()) throw NumericalError("build_class_kernel: non-finite class weights");
    return model;
}

// ---------------------------------------------------------------------------
// Oracle

LargeOracle::LargeOracle(const IndexedImage& img, SmoothnessGraph graph, double lambda, KernelModel model)
    : classOf_(img.classOf), graph_(std::move(graph)), lambda_(lambda), model_(std::move(model)) {
    if (graph_.size() != img.total()) throw InvalidArgument("LargeOracle: graph and image sizes differ");
    if (model_.classCount() != img.classCount() ||
        model_.classPairW2.rows() != Eigen::Index(img.classCount()) ||
        model_.classPairW2.cols() != Eigen::Index(img.classCount()))
        throw InvalidArgument("LargeOracle: kernel model does not match image classes");
    if (!(lambda >= 0.0)) throw InvalidArgument("LargeOracle: lambda must be >= 0");

    const double n = double(img.total());
    globalCoef_ = n > 0 ? 2.5 / n : 0.0;

    Eigen::VectorXd counts(Eigen::Index(img.classCount()));
    for (std::size_t a = 0; a < img.classCount(); ++a) counts(Eigen::Index(a)) = double(img.counts[a]);
    double total = -globalCoef_ * n * (n - 1.0);
    total += counts.dot(model_.classPairW2 * counts) - model_.classPairW2.diagonal().dot(counts);
    total += 2.0 * lambda_ * graph_.totalWeight();
    totalWeight_ = total;
}

void LargeOracle::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = size();
    const auto m = model_.classPairW2.rows();

    double sum = 0.0;
    Eigen::VectorXd classSums = Eigen::VectorXd::Zero(m);
    for (std::size_t k = 0; k < n; ++k) {
        sum += in[k];
        classSums(classOf_[k]) += in[k];
    }
    const double phi = -globalCoef_ * sum;
    const Eigen::VectorXd theta = model_.classPairW2 * classSums;
    const auto& w2 = model_.classPairW2;

    for (std::size_t k = 0; k < n; ++k) {
        const auto c = classOf_[k];
        double mu = 0.0;
        for (const Neighbor& nb : graph_.neighbors(k)) mu += nb.weight * in[nb.pixel];
        out[k] = phi + theta(c) + lambda_ * mu + (globalCoef_ - w2(c, c)) * in[k];
    }
}

double LargeOracle::weight(std::size_t p, std::size_t q) const {
    if (p == q) return 0.0;
    return -globalCoef_ + model_.classPairW2(classOf_[p], classOf_[q]) + lambda_ * graph_.weight(p, q);
}

LargeOracle build_large_oracle(const IndexedImage& img, const SmoothnessGraph& graph, double lambda,
                               const KernelModel& model) {
    return LargeOracle(img, graph, lambda, model);
}

double large_objective(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph, double lambda,
                       const KernelModel& model) {
    if (graph.size() != img.total()) throw InvalidArgument("large_objective: graph and image sizes differ");
    if (model.classPairW2.rows() != Eigen::Index(img.classCount()))
        throw InvalidArgument("large_objective: kernel model does not match image classes");
    const LabelCounts c = count_labels(img, labeling);
    const double n = double(img.total());
    if (n == 0.0) return 0.0;

    double value = -2.5 / n * double(c.fore) * double(c.back);
    for (std::size_t a = 0; a < img.classCount(); ++a)
        for (std::size_t b = 0; b < img.classCount(); ++b)
            value += double(c.foreByClass[a]) * double(c.backByClass[b]) *
                     model.classPairW2(Eigen::Index(a), Eigen::Index(b));
    return value + lambda * smoothness_cut(graph, labeling);
}

}  // namespace negcut
