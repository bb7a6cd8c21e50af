#include "negcut/hardness.hpp"

#include "negcut/energy.hpp"
#include "negcut/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace negcut {

namespace {

constexpr std::size_t kMaxBlocks = 24;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void requireBlockCount(const PartitionInstance& inst) {
    inst.validate();
    if (inst.values.size() > kMaxBlocks)
        throw InvalidArgument("partition instance has " + std::to_string(inst.values.size()) + " values; at most " +
                              std::to_string(kMaxBlocks) + " supported");
}

double sumXLogX(const PartitionInstance& inst) {
    double s = 0.0;
    for (auto x : inst.values) s += xlogx(double(x));
    return s;
}

// Energy of every subset mask, in mask order.
std::vector<double> subsetEnergies(const PartitionInstance& inst) {
    requireBlockCount(inst);
    const std::size_t m = inst.values.size();
    const double total = double(inst.total());
    const double constant = sumXLogX(inst);

    std::vector<double> energies(std::size_t(1) << m);
    for (std::uint32_t mask = 0; mask < energies.size(); ++mask) {
        std::uint64_t inside = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) inside += inst.values[i];
        const double s = double(inside);
        energies[mask] = xlogx(s) + xlogx(total - s) - constant;
    }
    return energies;
}

// Connected components of same-class adjacent pixels, numbered by first pixel.
std::vector<std::size_t> sameClassComponents(const IndexedImage& img, const SmoothnessGraph& graph,
                                             std::size_t& count) {
    const std::size_t n = img.total();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Edge& e : graph.edges()) {
        if (img.classOf[e.p] != img.classOf[e.q]) continue;
        const auto a = find(e.p), b = find(e.q);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> rootIndex(n, kUnset), component(n);
    count = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const auto r = find(p);
        if (rootIndex[r] == kUnset) rootIndex[r] = count++;
        component[p] = rootIndex[r];
    }
    return component;
}

}  // namespace

std::uint64_t PartitionInstance::total() const {
    return std::accumulate(values.begin(), values.end(), std::uint64_t(0));
}

void PartitionInstance::validate() const {
    if (values.empty()) throw InvalidArgument("partition instance is empty");
    for (auto x : values)
        if (x < 1) throw InvalidArgument("partition values must be positive integers");
}

PartitionInstance PartitionInstance::parse(std::string_view text) {
    PartitionInstance inst;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view token = trim(text.substr(0, comma));
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw InvalidArgument("malformed integer list entry '" + std::string(token) + "'");
        inst.values.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    inst.validate();
    return inst;
}

IndexedImage build_partition_image(const PartitionInstance& inst) {
    inst.validate();
    const std::size_t width = inst.total();
    std::vector<std::uint32_t> classes;
    std::vector<RgbF> colors;
    classes.reserve(width);
    colors.reserve(width);
    for (std::size_t i = 0; i < inst.values.size(); ++i) {
        // Any distinct colors will do; the reduction only uses class identity.
        const double gray = double(i);
        for (std::uint64_t k = 0; k < inst.values[i]; ++k) {
            classes.push_back(std::uint32_t(i));
            colors.push_back({gray, gray, gray});
        }
    }
    return IndexedImage::compact(width, 1, std::move(classes), colors);
}

SmoothnessGraph chain_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t p = 0; p + 1 < n; ++p) edges.push_back({p, p + 1, 1.0});
    return SmoothnessGraph(n, std::move(edges), Connectivity::Four);
}

BruteForceResult brute_force_min_energy(const IndexedImage& img, const SmoothnessGraph& graph, double lambda,
                                        const BruteForceOptions& options) {
    const std::size_t n = img.total();
    if (graph.size() != n) throw InvalidArgument("brute_force_min_energy: graph and image sizes differ");

    std::size_t bits = n;
    std::vector<std::size_t> unitOf(n);
    std::iota(unitOf.begin(), unitOf.end(), std::size_t(0));
    if (options.enumeration == Enumeration::BlockCoherent) unitOf = sameClassComponents(img, graph, bits);

    if (bits > options.cap || bits >= 63)
        throw InvalidArgument("brute_force_min_energy: " + std::to_string(bits) + " free labels exceed cap " +
                              std::to_string(options.cap));

    BruteForceResult best;
    best.energy = std::numeric_limits<double>::infinity();
    Labeling labeling(n, Label::Back);
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << bits); ++code) {
        for (std::size_t p = 0; p < n; ++p)
            labeling.labels[p] = ((code >> (bits - 1 - unitOf[p])) & 1u) ? Label::Fore : Label::Back;
        const double e = exact_energy(img, labeling, graph, lambda).total;
        if (e < best.energy) {
            best.energy = e;
            best.labeling = labeling;
        }
    }
    return best;
}

double brute_force_blocks(const PartitionInstance& inst) {
    const auto energies = subsetEnergies(inst);
    double best = std::numeric_limits<double>::infinity();
    for (double e : energies) best = std::min(best, e);
    return best;
}

std::vector<std::uint32_t> block_minimizers(const PartitionInstance& inst, double tol) {
    const auto energies = subsetEnergies(inst);
    double best = std::numeric_limits<double>::infinity();
    for (double e : energies) best = std::min(best, e);
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < energies.size(); ++mask)
        if (energies[mask] <= best + tol) masks.push_back(mask);
    return masks;
}

double partition_target(const PartitionInstance& inst) {
    inst.validate();
    const double total = double(inst.total());
    return 2.0 * xlogx(total / 2.0) - sumXLogX(inst);
}

bool decide_partition(const PartitionInstance& inst) {
    requireBlockCount(inst);
    if (inst.total() % 2 != 0) return false;
    return std::abs(brute_force_blocks(inst) - partition_target(inst)) <= 1e-9;
}

}  // namespace negcut
