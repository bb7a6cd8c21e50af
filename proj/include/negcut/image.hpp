#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace negcut {

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

struct RgbF {
    double r = 0, g = 0, b = 0;
    friend bool operator==(const RgbF&, const RgbF&) = default;
};

inline double squared_distance(const RgbF& a, const RgbF& b) {
    const double dr = a.r - b.r, dg = a.g - b.g, db = a.b - b.b;
    return dr * dr + dg * dg + db * db;
}

inline RgbF to_float(const Rgb8& c) { return {double(c.r), double(c.g), double(c.b)}; }

/// Row-major RGB raster. Gray sources are stored with equal channels.
struct RawImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb8> pixels;

    RawImage() = default;
    RawImage(std::size_t w, std::size_t h, Rgb8 fill = {});

    std::size_t size() const { return pixels.size(); }
    Rgb8& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    const Rgb8& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

    friend bool operator==(const RawImage&, const RawImage&) = default;
};

/// Pixel grid where every pixel carries a color-class index.
///
/// Classes are always compact: every index in [0, classCount()) owns at
/// least one pixel, so per-class reciprocals such as 1/counts[i] are safe.
struct IndexedImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint32_t> classOf;
    std::vector<std::size_t> counts;
    std::vector<RgbF> means;

    std::size_t total() const { return classOf.size(); }
    std::size_t classCount() const { return counts.size(); }

    /// Builds the image from a raw class assignment, dropping empty classes
    /// and renumbering the rest in increasing order of their original index.
    /// `colors` supplies the per-pixel color that the class means average.
    static IndexedImage compact(std::size_t width, std::size_t height,
                                std::vector<std::uint32_t> rawClasses,
                                const std::vector<RgbF>& colors);
};

enum class Label : std::uint8_t { Back = 0, Fore = 1 };

struct Labeling {
    std::vector<Label> labels;

    Labeling() = default;
    explicit Labeling(std::vector<Label> l) : labels(std::move(l)) {}
    Labeling(std::size_t n, Label fill) : labels(n, fill) {}

    std::size_t size() const { return labels.size(); }
    bool isFore(std::size_t p) const { return labels[p] == Label::Fore; }

    /// +1 for fore, -1 for back.
    std::vector<double> indicator() const;
    std::size_t foreCount() const;
    Labeling flipped() const;

    friend bool operator==(const Labeling&, const Labeling&) = default;
};

// Netpbm I/O. Only binary P5/P6 with maxval 255 are accepted.
RawImage load_image(const std::filesystem::path& path);
void write_image(const RawImage& img, const std::filesystem::path& path);  // always P6
void write_mask(const Labeling& labeling, std::size_t width, std::size_t height,
                const std::filesystem::path& path);
Labeling load_mask(const std::filesystem::path& path);

RawImage resize_max(const RawImage& img, std::size_t maxDim);

/// Rec.601 luma rounded to the nearest integer.
std::uint8_t luminance(const Rgb8& c);

IndexedImage quantize_gray(const RawImage& img, unsigned levels);

}  // namespace negcut
