#include "negcut/oracle.hpp"

#include "negcut/errors.hpp"

#include <numeric>
#include <string>

namespace negcut {

std::vector<double> WeightOracle::matvec(std::span<const double> r) const {
    if (r.size() != size())
        throw InvalidArgument("matvec: vector length " + std::to_string(r.size()) + " != oracle size " +
                              std::to_string(size()));
    std::vector<double> out(size());
    apply(r, out);
    return out;
}

DenseOracle::DenseOracle(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InvalidArgument("DenseOracle: matrix must be square");
}

void DenseOracle::apply(std::span<const double> in, std::span<double> out) const {
    Eigen::Map<const Eigen::VectorXd> x(in.data(), Eigen::Index(in.size()));
    Eigen::Map<Eigen::VectorXd> y(out.data(), Eigen::Index(out.size()));
    y.noalias() = m_ * x;
}

Eigen::MatrixXd materialize_dense(const WeightOracle& oracle, std::size_t cap) {
    const std::size_t n = oracle.size();
    if (n > cap)
        throw InvalidArgument("materialize_dense: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m(dim, dim);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) m(Eigen::Index(p), Eigen::Index(q)) = oracle.weight(p, q);
    return m;
}

double cut_value(const WeightOracle& oracle, const Labeling& labeling) {
    if (labeling.size() != oracle.size()) throw InvalidArgument("cut_value: labeling length mismatch");
    const std::vector<double> d = labeling.indicator();
    const std::vector<double> wd = oracle.matvec(d);
    const double quad = std::inner_product(d.begin(), d.end(), wd.begin(), 0.0);
    return 0.25 * (oracle.totalWeight() - quad);
}

}  // namespace negcut
