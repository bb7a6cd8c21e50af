#pragma once

#include "negcut/image.hpp"
#include "negcut/oracle.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace negcut {

struct LanczosOptions {
    double tol = 1e-6;
    std::size_t maxKrylov = 0;  // 0 selects min(n, 300)
    std::size_t maxRestarts = 10;
    std::uint64_t seed = 42;
};

struct EigenResult {
    double eigenvalue = 0.0;
    std::vector<double> eigenvector;  // unit 2-norm
    std::size_t iterations = 0;       // total matrix-vector products
    double residualNorm = 0.0;        // |W v - eigenvalue v|_2
    bool converged = false;
};

/// Largest algebraic eigenpair of a symmetric weight oracle.
///
/// Symmetric Lanczos with full reorthogonalization. The largest Ritz pair of
/// the tridiagonal projection is tracked every step; once its estimated
/// residual drops under tol * max(1, |theta|) the Ritz vector is formed and
/// its true residual checked. When the Krylov basis is full the iteration
/// restarts from the current Ritz vector. If the restart budget runs out the
/// best pair seen is returned with converged == false.
///
/// Throws NumericalError when the oracle returns non-finite values.
EigenResult lanczos_largest(const WeightOracle& oracle, const LanczosOptions& options = {});

/// Sign rule only: fore iff d_k > 0.
Labeling labels_from_sign(std::span<const double> vec);

/// Fixes the eigenvector sign so the largest-magnitude entry (first on ties)
/// is positive, then applies labels_from_sign.
Labeling threshold_labels(std::span<const double> vec);

}  // namespace negcut
