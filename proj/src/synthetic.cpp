#include "negcut/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace negcut {

namespace {

std::uint8_t noisy(std::uint8_t v, double noise, std::mt19937_64& rng) {
    if (noise <= 0.0) return v;
    std::normal_distribution<double> gauss(0.0, noise);
    return static_cast<std::uint8_t>(std::clamp(std::lround(double(v) + gauss(rng)), 0L, 255L));
}

}  // namespace

RawImage two_block_image(std::size_t width, std::size_t height, Rgb8 left, Rgb8 right, double noise,
                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RawImage img(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const Rgb8 base = x < width / 2 ? left : right;
            img.at(x, y) = {noisy(base.r, noise, rng), noisy(base.g, noise, rng), noisy(base.b, noise, rng)};
        }
    }
    return img;
}

Labeling two_block_truth(std::size_t width, std::size_t height) {
    Labeling truth(width * height, Label::Back);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width / 2; ++x) truth.labels[y * width + x] = Label::Fore;
    return truth;
}

RawImage random_image(std::size_t width, std::size_t height, std::uint64_t seed, std::size_t palette) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    auto randomColor = [&] {
        return Rgb8{std::uint8_t(byte(rng)), std::uint8_t(byte(rng)), std::uint8_t(byte(rng))};
    };

    std::vector<Rgb8> colors;
    for (std::size_t i = 0; i < palette; ++i) colors.push_back(randomColor());

    RawImage img(width, height);
    if (colors.empty()) {
        for (auto& px : img.pixels) px = randomColor();
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, colors.size() - 1);
        for (auto& px : img.pixels) px = colors[pick(rng)];
    }
    return img;
}

}  // namespace negcut
