#pragma once

#include "negcut/energy.hpp"
#include "negcut/image.hpp"
#include "negcut/lanczos.hpp"
#include "negcut/oracle_large.hpp"
#include "negcut/smoothness.hpp"

#include <optional>

namespace negcut {

enum class ColorSpace {
    Small,  // histogram weights; input from quantize_gray
    Large,  // kernel weights; input from kmeans_cluster
};

struct KernelParams {
    double sigma2 = 1.0;
    Estimator estimator = Estimator::Consistent;
};

struct SegmentParams {
    ColorSpace space = ColorSpace::Small;
    double lambda = 1.0;
    LanczosOptions lanczos;
    KernelParams kernel;  // used by ColorSpace::Large only
};

struct SegmentationResult {
    Labeling labeling;
    EigenResult eigen;
    EnergyBreakdown exact;            // histogram energy over the image classes
    double approxEnergy = 0.0;        // objective the cut realizes (bare, constants dropped)
    double cutValue = 0.0;            // sum of w(p,q) across the cut
    std::size_t foreCount = 0;        // s0
    std::size_t backCount = 0;        // s1
    std::size_t boundaryEdges = 0;    // smoothness edges crossing the labeling
};

/// Builds the oracle for `params.space`, extracts the largest eigenvector and
/// thresholds it into a labeling, then scores the labeling.
SegmentationResult segment(const IndexedImage& img, const SmoothnessGraph& graph, const SegmentParams& params);

/// Fraction of pixel pairs on which two labelings agree about being together
/// or apart. Invariant under swapping fore/back in either argument.
double rand_index(const Labeling& a, const Labeling& b);

}  // namespace negcut
