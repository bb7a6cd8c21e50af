#pragma once

// Reference implementations written straight from the weight and energy
// definitions. Quadratic or exponential cost; tests only.

#include "negcut/image.hpp"
#include "negcut/smoothness.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace negcut::reference {

inline void addSmoothness(Eigen::MatrixXd& m, const SmoothnessGraph& g, double lambda) {
    for (const Edge& e : g.edges()) {
        m(Eigen::Index(e.p), Eigen::Index(e.q)) += lambda * e.weight;
        m(Eigen::Index(e.q), Eigen::Index(e.p)) += lambda * e.weight;
    }
}

/// Histogram weights written out pair by pair.
inline Eigen::MatrixXd small_weights(const IndexedImage& img, const SmoothnessGraph& g, double lambda) {
    const auto n = Eigen::Index(img.total());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index q = 0; q < n; ++q) {
            if (p == q) continue;
            double w = -5.0 / (2.0 * double(n));
            const auto cp = img.classOf[std::size_t(p)];
            if (cp == img.classOf[std::size_t(q)]) w += 5.0 / (2.0 * double(img.counts[cp]));
            m(p, q) = w;
        }
    }
    addSmoothness(m, g, lambda);
    return m;
}

/// Kernel class-pair weights by scanning every pixel as a sample: pixel k
/// contributes 2.5 Pr_a(k) Pr_b(k) / D(k)^power, D(k) = sum_j Pr_{c(j)}(k).
inline Eigen::MatrixXd scan_w2(const IndexedImage& img, double sigma2, int power) {
    const std::size_t n = img.total(), m = img.classCount();
    auto density = [&](std::size_t a, std::size_t k) {
        const RgbF& x = img.means[a];
        const RgbF& y = img.means[img.classOf[k]];
        const double d2 = (x.r - y.r) * (x.r - y.r) + (x.g - y.g) * (x.g - y.g) + (x.b - y.b) * (x.b - y.b);
        return std::exp(-d2 / (2 * sigma2)) / std::sqrt(2 * std::numbers::pi * sigma2);
    };
    Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(Eigen::Index(m), Eigen::Index(m));
    for (std::size_t k = 0; k < n; ++k) {
        double denom = 0.0;
        for (std::size_t j = 0; j < n; ++j) denom += density(img.classOf[j], k);
        const double scale = power == 1 ? denom : denom * denom;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                w2(Eigen::Index(a), Eigen::Index(b)) += 2.5 * density(a, k) * density(b, k) / scale;
    }
    return w2;
}

inline Eigen::MatrixXd large_weights(const IndexedImage& img, const SmoothnessGraph& g, double lambda,
                                     const Eigen::MatrixXd& w2) {
    const auto n = Eigen::Index(img.total());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index q = 0; q < n; ++q)
            if (p != q) m(p, q) = -2.5 / double(n) + w2(img.classOf[std::size_t(p)], img.classOf[std::size_t(q)]);
    addSmoothness(m, g, lambda);
    return m;
}

/// Sum of w(p,q) over ordered pairs with p fore and q back.
inline double cut(const Eigen::MatrixXd& m, const Labeling& l) {
    double c = 0.0;
    for (std::size_t p = 0; p < l.size(); ++p)
        for (std::size_t q = 0; q < l.size(); ++q)
            if (l.isFore(p) && !l.isFore(q)) c += m(Eigen::Index(p), Eigen::Index(q));
    return c;
}

/// Boolean subset-sum: is there a subset summing to half the total?
inline bool subset_sum_half(const std::vector<std::uint64_t>& xs) {
    std::uint64_t total = 0;
    for (auto x : xs) total += x;
    if (total % 2) return false;
    for (std::uint32_t mask = 0; mask < (1u << xs.size()); ++mask) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (mask & (1u << i)) s += xs[i];
        if (2 * s == total) return true;
    }
    return false;
}

/// Every multiset of m values in [1, maxValue], as nondecreasing sequences.
inline void for_each_multiset(std::size_t m, std::uint64_t maxValue,
                              const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
    std::vector<std::uint64_t> xs(m, 1);
    while (true) {
        fn(xs);
        std::size_t i = m;
        while (i > 0 && xs[i - 1] == maxValue) --i;
        if (i == 0) return;
        const auto v = xs[i - 1] + 1;
        for (std::size_t j = i - 1; j < m; ++j) xs[j] = v;
    }
}

}  // namespace negcut::reference
