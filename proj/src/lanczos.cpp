#include "negcut/lanczos.hpp"

#include "negcut/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace negcut {

namespace {

using Eigen::Index;
using Eigen::VectorXd;

void applyChecked(const WeightOracle& oracle, const VectorXd& in, VectorXd& out) {
    oracle.apply({in.data(), std::size_t(in.size())}, {out.data(), std::size_t(out.size())});
    if (!out.allFinite()) throw NumericalError("lanczos_largest: oracle produced non-finite values");
}

VectorXd randomUnit(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    VectorXd v(static_cast<Index>(n));
    for (Index i = 0; i < v.size(); ++i) v(i) = uni(rng);
    const double norm = v.norm();
    if (norm == 0.0) v(0) = 1.0;
    return v / v.norm();
}

// Ritz extraction is O(j^3); skip it on most steps once the basis is large.
bool shouldExtract(Index j, Index last) { return j < 40 || j % 5 == 0 || j == last; }

}  // namespace

EigenResult lanczos_largest(const WeightOracle& oracle, const LanczosOptions& options) {
    const std::size_t n = oracle.size();
    if (n == 0) throw InvalidArgument("lanczos_largest: empty oracle");
    if (!(options.tol > 0.0)) throw InvalidArgument("lanczos_largest: tol must be positive");

    const Index dim = Index(n);
    const Index krylov = Index(std::min<std::size_t>(n, options.maxKrylov ? options.maxKrylov : 300));

    EigenResult best;
    best.residualNorm = std::numeric_limits<double>::infinity();

    VectorXd start = randomUnit(n, options.seed);
    Eigen::MatrixXd basis(dim, krylov);
    VectorXd w(dim), ritz(dim), product(dim);
    std::vector<double> alpha, beta;

    for (std::size_t restart = 0; restart <= options.maxRestarts; ++restart) {
        basis.col(0) = start;
        alpha.clear();
        beta.clear();

        for (Index j = 0; j < krylov; ++j) {
            applyChecked(oracle, basis.col(j), w);
            ++best.iterations;

            const double a = basis.col(j).dot(w);
            w -= a * basis.col(j);
            if (j > 0) w -= beta.back() * basis.col(j - 1);
            // Full reorthogonalization, applied twice.
            for (int pass = 0; pass < 2; ++pass) {
                const VectorXd h = basis.leftCols(j + 1).transpose() * w;
                w.noalias() -= basis.leftCols(j + 1) * h;
            }
            const double b = w.norm();
            alpha.push_back(a);

            double scale = 0.0;
            for (std::size_t i = 0; i < alpha.size(); ++i)
                scale = std::max(scale, std::abs(alpha[i]) + (i < beta.size() ? std::abs(beta[i]) : 0.0));
            const bool invariant = b <= 1e-12 * std::max(1.0, scale) || j + 1 == dim;
            const bool full = j + 1 == krylov;

            if (shouldExtract(j, krylov - 1) || invariant) {
                const VectorXd diag = Eigen::Map<const VectorXd>(alpha.data(), j + 1);
                const VectorXd sub = Eigen::Map<const VectorXd>(beta.data(), j);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
                if (tri.info() != Eigen::Success) throw NumericalError("lanczos_largest: tridiagonal solve failed");

                // Eigenvalues come sorted ascending; the last is the algebraic maximum.
                const double theta = tri.eigenvalues()(j);
                const VectorXd s = tri.eigenvectors().col(j);
                const double estimate = b * std::abs(s(j));
                const double bound = options.tol * std::max(1.0, std::abs(theta));

                if (estimate <= bound || invariant || full) {
                    ritz.noalias() = basis.leftCols(j + 1) * s;
                    ritz /= ritz.norm();
                    applyChecked(oracle, ritz, product);
                    ++best.iterations;
                    const double rq = ritz.dot(product);
                    const double residual = (product - rq * ritz).norm();

                    if (residual < best.residualNorm) {
                        best.eigenvalue = rq;
                        best.eigenvector.assign(ritz.data(), ritz.data() + ritz.size());
                        best.residualNorm = residual;
                    }
                    if (residual <= options.tol * std::max(1.0, std::abs(rq))) {
                        best.converged = true;
                        return best;
                    }
                    if (invariant || full) {
                        start = ritz;
                        break;
                    }
                }
            }

            beta.push_back(b);
            basis.col(j + 1) = w / b;
        }
    }
    return best;
}

Labeling labels_from_sign(std::span<const double> vec) {
    Labeling out(vec.size(), Label::Back);
    for (std::size_t k = 0; k < vec.size(); ++k)
        if (vec[k] > 0.0) out.labels[k] = Label::Fore;
    return out;
}

Labeling threshold_labels(std::span<const double> vec) {
    if (vec.empty()) throw InvalidArgument("threshold_labels: empty vector");
    std::size_t peak = 0;
    for (std::size_t k = 1; k < vec.size(); ++k)
        if (std::abs(vec[k]) > std::abs(vec[peak])) peak = k;
    if (vec[peak] >= 0.0) return labels_from_sign(vec);

    std::vector<double> flipped(vec.begin(), vec.end());
    for (double& v : flipped) v = -v;
    return labels_from_sign(flipped);
}

}  // namespace negcut
