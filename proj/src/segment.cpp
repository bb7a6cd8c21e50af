#include "negcut/segment.hpp"

#include "negcut/errors.hpp"
#include "negcut/oracle_small.hpp"

#include <memory>

namespace negcut {

SegmentationResult segment(const IndexedImage& img, const SmoothnessGraph& graph, const SegmentParams& params) {
    if (img.total() == 0) throw InvalidArgument("segment: empty image");
    if (graph.size() != img.total()) throw InvalidArgument("segment: graph and image sizes differ");

    std::unique_ptr<WeightOracle> oracle;
    std::optional<KernelModel> model;
    if (params.space == ColorSpace::Small) {
        oracle = std::make_unique<SmallOracle>(img, graph, params.lambda);
    } else {
        model = build_class_kernel(img, params.kernel.sigma2, params.kernel.estimator);
        oracle = std::make_unique<LargeOracle>(img, graph, params.lambda, *model);
    }

    SegmentationResult result;
    result.eigen = lanczos_largest(*oracle, params.lanczos);
    result.labeling = threshold_labels(result.eigen.eigenvector);
    result.exact = exact_energy(img, result.labeling, graph, params.lambda);
    result.approxEnergy = model ? large_objective(img, result.labeling, graph, params.lambda, *model)
                                : approx_energy(img, result.labeling, graph, params.lambda);
    result.cutValue = cut_value(*oracle, result.labeling);
    result.foreCount = result.labeling.foreCount();
    result.backCount = img.total() - result.foreCount;
    result.boundaryEdges = boundary_edge_count(graph, result.labeling);
    return result;
}

double rand_index(const Labeling& a, const Labeling& b) {
    if (a.size() != b.size()) throw InvalidArgument("rand_index: labelings differ in length");
    const double n = double(a.size());
    if (a.size() < 2) return 1.0;

    // 2x2 contingency table; agreeing pairs = C(n,2) + 2*sum C(n_ij,2) - sum C(a_i,2) - sum C(b_j,2).
    double table[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t p = 0; p < a.size(); ++p) table[a.isFore(p)][b.isFore(p)] += 1.0;
    auto pairs = [](double k) { return k * (k - 1.0) / 2.0; };

    double joint = 0, rows = 0, cols = 0;
    for (int i = 0; i < 2; ++i) {
        rows += pairs(table[i][0] + table[i][1]);
        cols += pairs(table[0][i] + table[1][i]);
        for (int j = 0; j < 2; ++j) joint += pairs(table[i][j]);
    }
    const double all = pairs(n);
    return (all + 2.0 * joint - rows - cols) / all;
}

}  // namespace negcut
