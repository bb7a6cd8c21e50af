#pragma once

#include "negcut/image.hpp"
#include "negcut/oracle.hpp"
#include "negcut/smoothness.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace negcut {

// ---------------------------------------------------------------------------
// Color clustering

struct KMeansOptions {
    std::size_t classes = 16;
    std::uint64_t seed = 42;
    std::size_t maxIter = 100;
};

/// Lloyd's k-means in RGB with k-means++ seeding. Classes that end up empty
/// (fewer distinct colors than requested) are compacted away.
IndexedImage kmeans_cluster(const RawImage& img, const KMeansOptions& options = {});

/// Mean squared RGB distance over 4-adjacent pixel pairs, floored at 1.
double estimate_sigma(const RawImage& img);

// ---------------------------------------------------------------------------
// Kernel color model

/// How the per-sample contributions are normalized when forming w2.
///   Paper:      Pr_a(k) Pr_b(k) / sum_j Pr_j(k)
///   Consistent: Pr_a(k) Pr_b(k) / (sum_j Pr_j(k))^2  (recovers the histogram limit)
enum class Estimator { Paper, Consistent };

/// (2 pi sigma2)^(-1/2) exp(-|from - at|^2 / (2 sigma2)).
double kernel_density(double sigma2, const RgbF& fromColor, const RgbF& atColor);

struct KernelModel {
    double sigma2 = 1.0;
    std::vector<RgbF> classMeans;
    std::vector<std::size_t> classCounts;
    Eigen::MatrixXd classPairW2;  // m x m, symmetric, entries >= 0
    Estimator estimator = Estimator::Consistent;

    std::size_t classCount() const { return classCounts.size(); }
};

/// Class-pair w2 weights, with each class centroid standing in for all of
/// its pixels (sample multiplicity = class count). O(m^3).
KernelModel build_class_kernel(const IndexedImage& img, double sigma2, Estimator estimator = Estimator::Consistent);

// ---------------------------------------------------------------------------
// Oracle

/// Kernel weight matrix for large color spaces. For p != q
///
///   w(p,q) = -5/(2n) + W2[c(p)][c(q)] + [p ~ q] * lambda * S(p,q)
///
/// with zero diagonal. The product costs O(n + |edges| + m^2).
class LargeOracle final : public WeightOracle {
public:
    LargeOracle(const IndexedImage& img, SmoothnessGraph graph, double lambda, KernelModel model);

    std::size_t size() const override { return classOf_.size(); }
    void apply(std::span<const double> in, std::span<double> out) const override;
    double totalWeight() const override { return totalWeight_; }
    double weight(std::size_t p, std::size_t q) const override;

    const KernelModel& model() const { return model_; }
    double lambda() const { return lambda_; }

private:
    std::vector<std::uint32_t> classOf_;
    SmoothnessGraph graph_;
    double lambda_;
    KernelModel model_;
    double globalCoef_;
    double totalWeight_;
};

LargeOracle build_large_oracle(const IndexedImage& img, const SmoothnessGraph& graph, double lambda,
                               const KernelModel& model);

/// Kernel-model objective for a labeling, as a double sum over class pairs:
///   sum_{a,b} n0_a n1_b (W2[a][b]) - (5/(2n)) s0 s1 + lambda * smoothness_cut
double large_objective(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph, double lambda,
                       const KernelModel& model);

}  // namespace negcut
