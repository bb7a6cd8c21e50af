#include "negcut/image.hpp"

#include "negcut/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace negcut {

RawImage::RawImage(std::size_t w, std::size_t h, Rgb8 fill) : width(w), height(h), pixels(w * h, fill) {}

IndexedImage IndexedImage::compact(std::size_t width, std::size_t height,
                                   std::vector<std::uint32_t> rawClasses,
                                   const std::vector<RgbF>& colors) {
    if (rawClasses.size() != width * height || colors.size() != rawClasses.size())
        throw InvalidArgument("IndexedImage::compact: size mismatch");

    std::uint32_t maxClass = 0;
    for (auto c : rawClasses) maxClass = std::max(maxClass, c);

    std::vector<std::size_t> rawCounts(rawClasses.empty() ? 0 : maxClass + 1, 0);
    for (auto c : rawClasses) ++rawCounts[c];

    constexpr auto kUnused = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> remap(rawCounts.size(), kUnused);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < rawCounts.size(); ++i)
        if (rawCounts[i] > 0) remap[i] = next++;

    IndexedImage out;
    out.width = width;
    out.height = height;
    out.counts.assign(next, 0);
    out.means.assign(next, RgbF{});
    for (auto& c : rawClasses) c = remap[c];
    out.classOf = std::move(rawClasses);

    std::vector<RgbF> sums(next);
    for (std::size_t p = 0; p < out.classOf.size(); ++p) {
        const auto c = out.classOf[p];
        ++out.counts[c];
        sums[c].r += colors[p].r;
        sums[c].g += colors[p].g;
        sums[c].b += colors[p].b;
    }
    for (std::size_t c = 0; c < next; ++c) {
        const double k = double(out.counts[c]);
        out.means[c] = {sums[c].r / k, sums[c].g / k, sums[c].b / k};
    }
    return out;
}

std::vector<double> Labeling::indicator() const {
    std::vector<double> d(labels.size());
    std::transform(labels.begin(), labels.end(), d.begin(),
                   [](Label l) { return l == Label::Fore ? 1.0 : -1.0; });
    return d;
}

std::size_t Labeling::foreCount() const {
    return std::size_t(std::count(labels.begin(), labels.end(), Label::Fore));
}

Labeling Labeling::flipped() const {
    Labeling out = *this;
    for (auto& l : out.labels) l = (l == Label::Fore) ? Label::Back : Label::Fore;
    return out;
}

// ---------------------------------------------------------------------------
// Netpbm

namespace {

struct PnmHeader {
    char kind = 0;  // '5' or '6'
    std::size_t width = 0, height = 0;
};

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& why) {
    throw ImageError(ImageError::Kind::MalformedHeader, path.string() + ": malformed header: " + why);
}

class ByteCursor {
public:
    explicit ByteCursor(const std::string& data) : data_(data) {}

    bool done() const { return pos_ >= data_.size(); }
    unsigned char peek() const { return static_cast<unsigned char>(data_[pos_]); }
    unsigned char get() { return static_cast<unsigned char>(data_[pos_++]); }
    std::size_t pos() const { return pos_; }

    // Skips whitespace and '#' comments between header tokens.
    void skipSeparators() {
        while (!done()) {
            if (std::isspace(peek())) {
                ++pos_;
            } else if (peek() == '#') {
                while (!done() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool readUnsigned(std::size_t& value) {
        skipSeparators();
        if (done() || !std::isdigit(peek())) return false;
        value = 0;
        while (!done() && std::isdigit(peek())) {
            value = value * 10 + (get() - '0');
            if (value > (std::size_t(1) << 32)) return false;
        }
        return true;
    }

private:
    const std::string& data_;
    std::size_t pos_ = 0;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageError(ImageError::Kind::Unreadable, path.string() + ": cannot open for reading");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw ImageError(ImageError::Kind::Unreadable, path.string() + ": read error");
    return data;
}

// Returns the header and leaves `cur` at the first payload byte.
PnmHeader parseHeader(ByteCursor& cur, const std::filesystem::path& path) {
    PnmHeader h;
    if (cur.done() || cur.get() != 'P' || cur.done()) malformed(path, "missing magic number");
    h.kind = static_cast<char>(cur.get());
    if (h.kind != '5' && h.kind != '6') malformed(path, "only P5 and P6 are supported");

    std::size_t maxval = 0;
    if (!cur.readUnsigned(h.width)) malformed(path, "bad width");
    if (!cur.readUnsigned(h.height)) malformed(path, "bad height");
    if (!cur.readUnsigned(maxval)) malformed(path, "bad maxval");
    if (h.width == 0 || h.height == 0) malformed(path, "zero dimension");
    if (cur.done() || !std::isspace(cur.peek())) malformed(path, "missing separator after maxval");
    cur.get();
    if (maxval != 255)
        throw ImageError(ImageError::Kind::UnsupportedMaxval,
                         path.string() + ": maxval " + std::to_string(maxval) + " unsupported (need 255)");
    return h;
}

void writeBytes(const std::filesystem::path& path, const std::string& header, const std::vector<std::uint8_t>& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ImageError(ImageError::Kind::WriteFailed, path.string() + ": cannot open for writing");
    out.write(header.data(), std::streamsize(header.size()));
    out.write(reinterpret_cast<const char*>(payload.data()), std::streamsize(payload.size()));
    if (!out) throw ImageError(ImageError::Kind::WriteFailed, path.string() + ": write failed");
}

std::string header(char kind, std::size_t w, std::size_t h) {
    return std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

RawImage load_image(const std::filesystem::path& path) {
    const std::string data = slurp(path);
    ByteCursor cur(data);
    const PnmHeader h = parseHeader(cur, path);

    const std::size_t channels = h.kind == '6' ? 3 : 1;
    const std::size_t need = h.width * h.height * channels;
    const std::size_t have = data.size() - cur.pos();
    if (have < need)
        throw ImageError(ImageError::Kind::Truncated, path.string() + ": expected " + std::to_string(need) +
                                                          " payload bytes, found " + std::to_string(have));

    RawImage img(h.width, h.height);
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(data.data() + cur.pos());
    for (std::size_t p = 0; p < img.size(); ++p) {
        if (channels == 3)
            img.pixels[p] = {bytes[3 * p], bytes[3 * p + 1], bytes[3 * p + 2]};
        else
            img.pixels[p] = {bytes[p], bytes[p], bytes[p]};
    }
    return img;
}

void write_image(const RawImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> payload;
    payload.reserve(img.size() * 3);
    for (const auto& c : img.pixels) {
        payload.push_back(c.r);
        payload.push_back(c.g);
        payload.push_back(c.b);
    }
    writeBytes(path, header('6', img.width, img.height), payload);
}

void write_mask(const Labeling& labeling, std::size_t width, std::size_t height,
                const std::filesystem::path& path) {
    if (labeling.size() != width * height) throw InvalidArgument("write_mask: labeling size does not match width*height");
    std::vector<std::uint8_t> payload(labeling.size());
    for (std::size_t p = 0; p < payload.size(); ++p) payload[p] = labeling.isFore(p) ? 255 : 0;
    writeBytes(path, header('5', width, height), payload);
}

Labeling load_mask(const std::filesystem::path& path) {
    const RawImage img = load_image(path);
    Labeling out(img.size(), Label::Back);
    for (std::size_t p = 0; p < img.size(); ++p)
        if (luminance(img.pixels[p]) > 127) out.labels[p] = Label::Fore;
    return out;
}

// ---------------------------------------------------------------------------
// Resizing

namespace {

struct Tap {
    std::size_t src;
    double weight;
};

// Area-overlap taps for mapping `srcLen` samples onto `dstLen` boxes.
std::vector<std::vector<Tap>> boxTaps(std::size_t srcLen, std::size_t dstLen) {
    std::vector<std::vector<Tap>> taps(dstLen);
    const double scale = double(srcLen) / double(dstLen);
    for (std::size_t d = 0; d < dstLen; ++d) {
        const double lo = double(d) * scale;
        const double hi = double(d + 1) * scale;
        auto first = static_cast<std::size_t>(std::floor(lo));
        auto last = std::min(srcLen, static_cast<std::size_t>(std::ceil(hi)));
        for (std::size_t s = first; s < last; ++s) {
            const double w = std::min(hi, double(s + 1)) - std::max(lo, double(s));
            if (w > 1e-12) taps[d].push_back({s, w});
        }
    }
    return taps;
}

std::uint8_t toByte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

RawImage resize_max(const RawImage& img, std::size_t maxDim) {
    if (maxDim < 1) throw InvalidArgument("resize_max: maxDim must be >= 1");
    const std::size_t longest = std::max(img.width, img.height);
    if (longest <= maxDim) return img;

    const double scale = double(maxDim) / double(longest);
    auto target = [&](std::size_t len) {
        if (len == longest) return maxDim;
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(double(len) * scale)));
    };
    const std::size_t w = target(img.width), h = target(img.height);

    const auto xTaps = boxTaps(img.width, w);
    const auto yTaps = boxTaps(img.height, h);

    RawImage out(w, h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            double r = 0, g = 0, b = 0, wsum = 0;
            for (const Tap& ty : yTaps[y]) {
                for (const Tap& tx : xTaps[x]) {
                    const double wt = ty.weight * tx.weight;
                    const Rgb8& c = img.at(tx.src, ty.src);
                    r += wt * c.r;
                    g += wt * c.g;
                    b += wt * c.b;
                    wsum += wt;
                }
            }
            out.at(x, y) = {toByte(r / wsum), toByte(g / wsum), toByte(b / wsum)};
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gray quantization

std::uint8_t luminance(const Rgb8& c) {
    // Integer form of round(0.299R + 0.587G + 0.114B), halves rounded up.
    const unsigned v = 299u * c.r + 587u * c.g + 114u * c.b;
    return static_cast<std::uint8_t>((v + 500u) / 1000u);
}

IndexedImage quantize_gray(const RawImage& img, unsigned levels) {
    if (levels < 2 || levels > 256) throw InvalidArgument("quantize_gray: levels must be in [2, 256]");
    std::vector<std::uint32_t> classes(img.size());
    std::vector<RgbF> grays(img.size());
    for (std::size_t p = 0; p < img.size(); ++p) {
        const unsigned g = luminance(img.pixels[p]);
        classes[p] = g * levels / 256u;
        grays[p] = {double(g), double(g), double(g)};
    }
    return IndexedImage::compact(img.width, img.height, std::move(classes), grays);
}

}  // namespace negcut
