#pragma once

#include "negcut/image.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace negcut {

enum class Connectivity { Four = 4, Eight = 8 };
enum class SmoothnessMode { Constant, Exponential };

struct SmoothnessOptions {
    Connectivity connectivity = Connectivity::Four;
    SmoothnessMode mode = SmoothnessMode::Constant;
    std::optional<double> beta;  // exponential mode only; estimated when empty
    double offset = 0.0;         // added to every edge weight
};

struct Edge {
    std::size_t p, q;  // p < q
    double weight;
};

struct Neighbor {
    std::size_t pixel;
    double weight;
};

/// Pixel adjacency with a nonnegative weight S(p,q) per adjacent pair.
class SmoothnessGraph {
public:
    SmoothnessGraph() = default;
    SmoothnessGraph(std::size_t n, std::vector<Edge> edges, Connectivity connectivity);

    std::size_t size() const { return n_; }
    Connectivity connectivity() const { return connectivity_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double totalWeight() const { return totalWeight_; }

    std::span<const Neighbor> neighbors(std::size_t p) const {
        return {adjacency_.data() + offsets_[p], offsets_[p + 1] - offsets_[p]};
    }

    /// Weight of the edge between p and q, or 0 if they are not adjacent.
    double weight(std::size_t p, std::size_t q) const;

private:
    std::size_t n_ = 0;
    Connectivity connectivity_ = Connectivity::Four;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    double totalWeight_ = 0.0;
};

SmoothnessGraph build_smoothness(const RawImage& img, const SmoothnessOptions& options = {});

/// A graph with no edges over n pixels.
SmoothnessGraph empty_smoothness(std::size_t n);

/// Sum of S(p,q) over edges whose endpoints carry different labels.
double smoothness_cut(const SmoothnessGraph& graph, const Labeling& labeling);

/// Number of edges whose endpoints carry different labels.
std::size_t boundary_edge_count(const SmoothnessGraph& graph, const Labeling& labeling);

}  // namespace negcut
