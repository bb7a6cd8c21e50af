#pragma once

#include "negcut/image.hpp"
#include "negcut/oracle.hpp"
#include "negcut/smoothness.hpp"

#include <cstdint>
#include <vector>

namespace negcut {

/// Histogram weight matrix for small color spaces. For p != q
///
///   w(p,q) = -5/(2n) + [c(p) == c(q)] * 5/(2 n_c(p)) + [p ~ q] * lambda * S(p,q)
///
/// and the diagonal is zero. The product costs O(n + |edges| + m).
class SmallOracle final : public WeightOracle {
public:
    SmallOracle(const IndexedImage& img, SmoothnessGraph graph, double lambda);

    std::size_t size() const override { return classOf_.size(); }
    void apply(std::span<const double> in, std::span<double> out) const override;
    double totalWeight() const override { return totalWeight_; }
    double weight(std::size_t p, std::size_t q) const override;

    double lambda() const { return lambda_; }
    const SmoothnessGraph& graph() const { return graph_; }

private:
    std::vector<std::uint32_t> classOf_;
    std::vector<double> classCoef_;  // 5 / (2 n_i)
    SmoothnessGraph graph_;
    double lambda_;
    double globalCoef_;  // 5 / (2 n)
    double totalWeight_;
};

SmallOracle build_small_oracle(const IndexedImage& img, const SmoothnessGraph& graph, double lambda);

}  // namespace negcut
