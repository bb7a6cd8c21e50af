#pragma once

#include "negcut/image.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace negcut {

/// Implicit symmetric n x n weight matrix W.
///
/// Implementations expose an O(n) product and direct entry lookup; the dense
/// matrix is never formed except through materialize_dense(). Oracles are
/// immutable after construction, so concurrent products are safe.
class WeightOracle {
public:
    virtual ~WeightOracle() = default;

    virtual std::size_t size() const = 0;

    /// out = W * in. Both spans have length size() and must not alias.
    virtual void apply(std::span<const double> in, std::span<double> out) const = 0;

    /// Sum of all entries of W (S_W).
    virtual double totalWeight() const = 0;

    /// Entry W(p, q), computed directly from the weight definition.
    virtual double weight(std::size_t p, std::size_t q) const = 0;

    std::vector<double> matvec(std::span<const double> r) const;
};

/// Explicit n x n matrix; used for tests and tiny problems.
class DenseOracle final : public WeightOracle {
public:
    explicit DenseOracle(Eigen::MatrixXd m);

    std::size_t size() const override { return std::size_t(m_.rows()); }
    void apply(std::span<const double> in, std::span<double> out) const override;
    double totalWeight() const override { return m_.sum(); }
    double weight(std::size_t p, std::size_t q) const override { return m_(Eigen::Index(p), Eigen::Index(q)); }

    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    Eigen::MatrixXd m_;
};

Eigen::MatrixXd materialize_dense(const WeightOracle& oracle, std::size_t cap = 2048);

/// Capacity of the cut {F, B}: sum of w(p,q) over p in F, q in B, which is
/// (S_W - D^T W D) / 4 for the +-1 indicator D. One product.
double cut_value(const WeightOracle& oracle, const Labeling& labeling);

}  // namespace negcut
