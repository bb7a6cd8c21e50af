#include "negcut/oracle_small.hpp"

#include "negcut/errors.hpp"

namespace negcut {

SmallOracle::SmallOracle(const IndexedImage& img, SmoothnessGraph graph, double lambda)
    : classOf_(img.classOf), graph_(std::move(graph)), lambda_(lambda) {
    if (graph_.size() != img.total()) throw InvalidArgument("SmallOracle: graph and image sizes differ");
    if (!(lambda >= 0.0)) throw InvalidArgument("SmallOracle: lambda must be >= 0");

    const double n = double(img.total());
    globalCoef_ = n > 0 ? 2.5 / n : 0.0;
    classCoef_.resize(img.classCount());
    for (std::size_t i = 0; i < img.classCount(); ++i) classCoef_[i] = 2.5 / double(img.counts[i]);

    // Off-diagonal sum of each term: n(n-1) pairs for w1, n_i(n_i-1) per class
    // for w2, and both orientations of every edge for w3.
    double total = -globalCoef_ * n * (n - 1.0);
    for (std::size_t i = 0; i < img.classCount(); ++i) {
        const double ni = double(img.counts[i]);
        total += classCoef_[i] * ni * (ni - 1.0);
    }
    total += 2.0 * lambda_ * graph_.totalWeight();
    totalWeight_ = total;
}

void SmallOracle::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = size();

    double sum = 0.0;
    std::vector<double> theta(classCoef_.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        sum += in[k];
        theta[classOf_[k]] += in[k];
    }
    const double phi = -globalCoef_ * sum;
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] *= classCoef_[i];

    for (std::size_t k = 0; k < n; ++k) {
        const auto c = classOf_[k];
        double mu = 0.0;
        for (const Neighbor& nb : graph_.neighbors(k)) mu += nb.weight * in[nb.pixel];
        // The last term removes the w1 and w2 self-contributions folded into phi and theta.
        out[k] = phi + theta[c] + lambda_ * mu + (globalCoef_ - classCoef_[c]) * in[k];
    }
}

double SmallOracle::weight(std::size_t p, std::size_t q) const {
    if (p == q) return 0.0;
    double w = -globalCoef_;
    if (classOf_[p] == classOf_[q]) w += classCoef_[classOf_[p]];
    return w + lambda_ * graph_.weight(p, q);
}

SmallOracle build_small_oracle(const IndexedImage& img, const SmoothnessGraph& graph, double lambda) {
    return SmallOracle(img, graph, lambda);
}

}  // namespace negcut
