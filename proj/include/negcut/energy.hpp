#pragma once

#include "negcut/image.hpp"
#include "negcut/smoothness.hpp"

#include <cstddef>
#include <vector>

namespace negcut {

/// E = E_D + lambda * E_S, in nats.
struct EnergyBreakdown {
    double dataTerm = 0.0;
    double smoothnessTerm = 0.0;
    double lambda = 0.0;
    double total = 0.0;
};

/// x ln x + (1-x) ln(1-x), with 0 ln 0 = 0.
double f3(double x);

/// Quadratic surrogate -(5/2) x (1-x) - 1/12 for f3.
double f3_approx(double x);

/// Residual Delta(x) = -(5/2) x (1-x) - f3(x).
double delta(double x);

struct DeltaStats {
    double mean;  // integral of Delta over [0,1]
    double mse;   // integral of (Delta - 1/12)^2 over [0,1]
};

/// Composite Simpson integration with `samples` subintervals (rounded up to even).
DeltaStats delta_stats(std::size_t samples);

/// x ln x with the 0 ln 0 = 0 convention.
double xlogx(double x);

/// Per-labeling counts: s0 = |F|, s1 = |B|, and per-class fore/back pixel counts.
struct LabelCounts {
    std::size_t fore = 0;
    std::size_t back = 0;
    std::vector<std::size_t> foreByClass;
    std::vector<std::size_t> backByClass;
};

LabelCounts count_labels(const IndexedImage& img, const Labeling& labeling);

/// Exact uninformed energy with histogram color models re-derived from the labeling.
EnergyBreakdown exact_energy(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph,
                             double lambda);

/// Quadratic approximation of the energy. The bare value drops every
/// labeling-independent constant; with `restoreConstants` the term
/// n ln n - sum n_i ln n_i is added back so the value is directly
/// comparable with exact_energy().total.
double approx_energy(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph, double lambda,
                     bool restoreConstants = false);

/// n ln n - sum_i n_i ln n_i: the data term of either single-segment labeling.
double color_entropy_nats(const IndexedImage& img);

}  // namespace negcut
