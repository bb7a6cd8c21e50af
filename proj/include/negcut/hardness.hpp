#pragma once

#include "negcut/image.hpp"
#include "negcut/smoothness.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace negcut {

/// Set-partition instance: positive integers x_1..x_m summing to 2k.
struct PartitionInstance {
    std::vector<std::uint64_t> values;

    std::uint64_t total() const;
    /// Throws InvalidArgument unless nonempty with every value >= 1.
    void validate() const;

    /// Parses "1,2,3". Whitespace around entries is allowed.
    static PartitionInstance parse(std::string_view text);
};

/// 1 x total image laid out as x_1 pixels of class 0, x_2 of class 1, ...
IndexedImage build_partition_image(const PartitionInstance& inst);

/// Chain graph over a 1 x n image, unit weights.
SmoothnessGraph chain_graph(std::size_t n);

enum class Enumeration {
    All,            // all 2^n labelings
    BlockCoherent,  // only labelings constant on same-class connected runs
};

struct BruteForceOptions {
    std::size_t cap = 22;  // maximum number of enumerated bits
    Enumeration enumeration = Enumeration::All;
};

struct BruteForceResult {
    double energy = 0.0;
    Labeling labeling;
};

/// Exhaustive minimum of exact_energy. Labelings are visited in increasing
/// binary code with pixel 0 as the most significant bit (fore = 1), and the
/// first minimizer found is kept.
BruteForceResult brute_force_min_energy(const IndexedImage& img, const SmoothnessGraph& graph, double lambda,
                                        const BruteForceOptions& options = {});

/// Minimum over subsets X' of  S' ln S' + S'' ln S'' - sum x_i ln x_i,
/// where S' and S'' are the sums inside and outside X'.
double brute_force_blocks(const PartitionInstance& inst);

/// Bitmasks of every subset attaining brute_force_blocks within `tol`.
std::vector<std::uint32_t> block_minimizers(const PartitionInstance& inst, double tol = 1e-9);

/// 2k ln k - sum x_i ln x_i: the block minimum iff an equal split exists.
double partition_target(const PartitionInstance& inst);

/// True iff the block minimum equals partition_target within 1e-9.
bool decide_partition(const PartitionInstance& inst);

}  // namespace negcut
