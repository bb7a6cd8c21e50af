#pragma once

#include "negcut/image.hpp"

#include <cstdint>

namespace negcut {

/// Left half `left`, right half `right` (the extra column of an odd width goes
/// right). Gaussian noise with standard deviation `noise` is added per channel
/// and clamped to [0, 255].
RawImage two_block_image(std::size_t width, std::size_t height, Rgb8 left, Rgb8 right, double noise = 0.0,
                         std::uint64_t seed = 1);

/// Ground truth for two_block_image: left half fore.
Labeling two_block_truth(std::size_t width, std::size_t height);

/// Uniformly random colors; `palette` > 0 restricts them to that many random colors.
RawImage random_image(std::size_t width, std::size_t height, std::uint64_t seed, std::size_t palette = 0);

}  // namespace negcut
