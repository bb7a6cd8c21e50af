#include "negcut/smoothness.hpp"

#include "negcut/errors.hpp"

#include <algorithm>
#include <cmath>

namespace negcut {

SmoothnessGraph::SmoothnessGraph(std::size_t n, std::vector<Edge> edges, Connectivity connectivity)
    : n_(n), connectivity_(connectivity), edges_(std::move(edges)) {
    std::vector<std::size_t> degree(n, 0);
    for (const Edge& e : edges_) {
        if (e.p >= e.q || e.q >= n) throw InvalidArgument("SmoothnessGraph: edges need p < q < n");
        if (!(e.weight >= 0.0)) throw InvalidArgument("SmoothnessGraph: negative or NaN edge weight");
        ++degree[e.p];
        ++degree[e.q];
        totalWeight_ += e.weight;
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t p = 0; p < n; ++p) offsets_[p + 1] = offsets_[p] + degree[p];
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adjacency_[fill[e.p]++] = {e.q, e.weight};
        adjacency_[fill[e.q]++] = {e.p, e.weight};
    }
    for (std::size_t p = 0; p < n; ++p) {
        auto first = adjacency_.begin() + std::ptrdiff_t(offsets_[p]);
        auto last = adjacency_.begin() + std::ptrdiff_t(offsets_[p + 1]);
        std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.pixel < b.pixel; });
        if (std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
                return a.pixel == b.pixel;
            }) != last)
            throw InvalidArgument("SmoothnessGraph: duplicate edge");
    }
}

double SmoothnessGraph::weight(std::size_t p, std::size_t q) const {
    for (const Neighbor& nb : neighbors(p))
        if (nb.pixel == q) return nb.weight;
    return 0.0;
}

namespace {

// Visits each unordered adjacent pair once, as (p, q) with p < q.
template <typename Fn>
void forEachAdjacentPair(std::size_t w, std::size_t h, Connectivity conn, Fn&& fn) {
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t p = y * w + x;
            if (x + 1 < w) fn(p, p + 1);
            if (y + 1 < h) fn(p, p + w);
            if (conn == Connectivity::Eight && y + 1 < h) {
                if (x + 1 < w) fn(p, p + w + 1);
                if (x > 0) fn(p, p + w - 1);
            }
        }
    }
}

}  // namespace

SmoothnessGraph build_smoothness(const RawImage& img, const SmoothnessOptions& options) {
    if (img.size() == 0) throw InvalidArgument("build_smoothness: empty image");
    if (options.beta && !(*options.beta > 0.0)) throw InvalidArgument("build_smoothness: beta must be positive");
    if (!(options.offset >= 0.0)) throw InvalidArgument("build_smoothness: offset must be >= 0");

    auto dist2 = [&](std::size_t p, std::size_t q) {
        return squared_distance(to_float(img.pixels[p]), to_float(img.pixels[q]));
    };

    double beta = 1.0;
    if (options.mode == SmoothnessMode::Exponential) {
        if (options.beta) {
            beta = *options.beta;
        } else {
            double sum = 0.0;
            std::size_t count = 0;
            forEachAdjacentPair(img.width, img.height, options.connectivity, [&](std::size_t p, std::size_t q) {
                sum += dist2(p, q);
                ++count;
            });
            beta = std::max(1.0, count ? sum / double(count) : 0.0);
        }
    }

    std::vector<Edge> edges;
    forEachAdjacentPair(img.width, img.height, options.connectivity, [&](std::size_t p, std::size_t q) {
        double wt = 1.0;
        if (options.mode == SmoothnessMode::Exponential) wt = std::exp(-dist2(p, q) / (2.0 * beta));
        edges.push_back({p, q, wt + options.offset});
    });
    return SmoothnessGraph(img.size(), std::move(edges), options.connectivity);
}

SmoothnessGraph empty_smoothness(std::size_t n) { return SmoothnessGraph(n, {}, Connectivity::Four); }

double smoothness_cut(const SmoothnessGraph& graph, const Labeling& labeling) {
    if (labeling.size() != graph.size()) throw InvalidArgument("smoothness_cut: labeling length mismatch");
    double cut = 0.0;
    for (const Edge& e : graph.edges())
        if (labeling.labels[e.p] != labeling.labels[e.q]) cut += e.weight;
    return cut;
}

std::size_t boundary_edge_count(const SmoothnessGraph& graph, const Labeling& labeling) {
    if (labeling.size() != graph.size()) throw InvalidArgument("boundary_edge_count: labeling length mismatch");
    return std::size_t(std::count_if(graph.edges().begin(), graph.edges().end(), [&](const Edge& e) {
        return labeling.labels[e.p] != labeling.labels[e.q];
    }));
}

}  // namespace negcut
