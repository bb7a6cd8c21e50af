#pragma once

#include "negcut/image.hpp"
#include "negcut/smoothness.hpp"
#include "negcut/synthetic.hpp"

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace negcut::testing {

// Per-test scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("negcut_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_bytes(const std::filesystem::path& path, const std::string& header,
                        const std::vector<std::uint8_t>& payload) {
    std::ofstream out(path, std::ios::binary);
    out << header;
    out.write(reinterpret_cast<const char*>(payload.data()), std::streamsize(payload.size()));
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Labeling random_labeling(std::size_t n, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    Labeling l(n, Label::Back);
    for (auto& v : l.labels) v = coin(rng) ? Label::Fore : Label::Back;
    return l;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng);
    return v;
}

// Random indexed image built from a small random palette, plus its raster.
struct RandomScene {
    RawImage raw;
    IndexedImage indexed;
};

inline RandomScene random_gray_scene(std::size_t w, std::size_t h, std::uint64_t seed, unsigned levels = 16) {
    RawImage raw = random_image(w, h, seed);
    IndexedImage idx = quantize_gray(raw, levels);
    return {std::move(raw), std::move(idx)};
}

}  // namespace negcut::testing
