#include "negcut/energy.hpp"

#include "negcut/errors.hpp"

#include <cmath>

namespace negcut {

namespace {

void requireUnit(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument(std::string(who) + ": x must lie in [0, 1]");
}

void requireMatching(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph,
                     const char* who) {
    if (labeling.size() != img.total() || graph.size() != img.total())
        throw InvalidArgument(std::string(who) + ": image, labeling and graph sizes differ");
}

}  // namespace

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double f3(double x) {
    requireUnit(x, "f3");
    return xlogx(x) + xlogx(1.0 - x);
}

double f3_approx(double x) {
    requireUnit(x, "f3_approx");
    return -2.5 * x * (1.0 - x) - 1.0 / 12.0;
}

double delta(double x) { return -2.5 * x * (1.0 - x) - f3(x); }

DeltaStats delta_stats(std::size_t samples) {
    if (samples < 1000) throw InvalidArgument("delta_stats: need at least 1000 samples");
    const std::size_t intervals = samples + (samples % 2);
    const double h = 1.0 / double(intervals);

    double sumMean = 0.0, sumMse = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double x = (i == intervals) ? 1.0 : double(i) * h;
        const double weight = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double d = delta(x);
        const double e = d - 1.0 / 12.0;
        sumMean += weight * d;
        sumMse += weight * e * e;
    }
    return {sumMean * h / 3.0, sumMse * h / 3.0};
}

LabelCounts count_labels(const IndexedImage& img, const Labeling& labeling) {
    if (labeling.size() != img.total()) throw InvalidArgument("count_labels: labeling length mismatch");
    LabelCounts c;
    c.foreByClass.assign(img.classCount(), 0);
    c.backByClass.assign(img.classCount(), 0);
    for (std::size_t p = 0; p < img.total(); ++p) {
        if (labeling.isFore(p)) {
            ++c.fore;
            ++c.foreByClass[img.classOf[p]];
        } else {
            ++c.back;
            ++c.backByClass[img.classOf[p]];
        }
    }
    return c;
}

EnergyBreakdown exact_energy(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph,
                             double lambda) {
    requireMatching(img, labeling, graph, "exact_energy");
    const LabelCounts c = count_labels(img, labeling);

    // sum_{p in F} -ln(n_{0,c(p)}/s0) + sum_{p in B} -ln(n_{1,c(p)}/s1)
    double data = xlogx(double(c.fore)) + xlogx(double(c.back));
    for (std::size_t i = 0; i < img.classCount(); ++i)
        data -= xlogx(double(c.foreByClass[i])) + xlogx(double(c.backByClass[i]));

    EnergyBreakdown e;
    e.dataTerm = data;
    e.smoothnessTerm = smoothness_cut(graph, labeling);
    e.lambda = lambda;
    e.total = e.dataTerm + lambda * e.smoothnessTerm;
    return e;
}

double color_entropy_nats(const IndexedImage& img) {
    double h = xlogx(double(img.total()));
    for (auto count : img.counts) h -= xlogx(double(count));
    return h;
}

double approx_energy(const IndexedImage& img, const Labeling& labeling, const SmoothnessGraph& graph, double lambda,
                     bool restoreConstants) {
    requireMatching(img, labeling, graph, "approx_energy");
    const LabelCounts c = count_labels(img, labeling);
    const double n = double(img.total());
    if (n == 0.0) return 0.0;

    double value = -2.5 / n * double(c.fore) * double(c.back);
    for (std::size_t i = 0; i < img.classCount(); ++i) {
        const double ni = double(img.counts[i]);
        value += 2.5 / ni * double(c.foreByClass[i]) * double(c.backByClass[i]);
    }
    value += lambda * smoothness_cut(graph, labeling);
    if (restoreConstants) value += color_entropy_nats(img);
    return value;
}

}  // namespace negcut
