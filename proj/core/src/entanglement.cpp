// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rabiforge {

namespace {

Eigen::Matrix4cd hermitian_sqrt(const Eigen::Matrix4cd& m, double clip_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolve failed in concurrence");
    Eigen::Vector4d vals = solver.eigenvalues();
    // Populations at roundoff scale are zeroed outright; sqrt would otherwise
    // lift eigenvalue noise eps to sqrt(eps) and leak into the spectrum.
    const double floor_tol = vals.cwiseAbs().maxCoeff() * 1e-14;
    for (int i = 0; i < 4; ++i) {
        if (vals(i) < -clip_tol)
            throw std::runtime_error("density matrix is not positive semidefinite");
        vals(i) = vals(i) > floor_tol ? std::sqrt(vals(i)) : 0.0;
    }
    return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::Matrix4cd spin_flip_matrix() {
    // Y (x) Y in the computational basis.
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    if (rho.mat.rows() != 4 || rho.mat.cols() != 4)
        throw std::invalid_argument("concurrence needs a 4x4 density matrix");
    const Eigen::Matrix4cd r = 0.5 * (rho.mat + rho.mat.adjoint());
    if ((r - rho.mat).cwiseAbs().maxCoeff() > 1e-8)
        throw std::runtime_error("density matrix is not Hermitian");

    static const Eigen::Matrix4cd yy = spin_flip_matrix();
    const Eigen::Matrix4cd sqrt_rho = hermitian_sqrt(r, 1e-8);
    // R = sqrt(sqrt(rho) rho~ sqrt(rho)) = sqrt(K K^dagger) for
    // K = sqrt(rho) YY sqrt(rho)*, so the lambdas are the singular values of
    // K. The SVD reads them off with absolute (not square-root) precision.
    const Eigen::Matrix4cd k = sqrt_rho * yy * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(k);
    const Eigen::Vector4d lambdas = svd.singularValues();  // sorted descending
    const double c = lambdas(0) - lambdas(1) - lambdas(2) - lambdas(3);
    return std::clamp(c, 0.0, 1.0);
}

double entropy_of_formation(double c, bool paper_literal) {
    if (c < 0.0 || c > 1.0)
        throw std::invalid_argument("concurrence must be in [0, 1]");
    const double root = paper_literal ? std::sqrt(std::max(0.0, 1.0 - c))
                                      : std::sqrt(std::max(0.0, 1.0 - c * c));
    const double p = 0.5 + 0.5 * root;
    auto xlog2 = [](double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); };
    const double signed_entropy = xlog2(p) + xlog2(1.0 - p);
    return paper_literal ? signed_entropy : -signed_entropy;
}

std::pair<int, int> select_pair(const StateVector& state,
                                std::optional<std::pair<int, int>> previous,
                                bool paper_literal) {
    const int n = state.n_qubits;
    if (n < 2) throw std::invalid_argument("select_pair needs at least two qubits");

    std::pair<int, int> best{-1, -1};
    double best_score = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (previous && previous->first == a && previous->second == b) continue;
            const double score =
                entropy_of_formation(concurrence(reduce(state, a, b)), paper_literal);
            if (best.first < 0 || score > best_score) {
                best = {a, b};
                best_score = score;
            }
        }
    }
    // A two-qubit register has a single pair; the exclusion is waived there.
    if (best.first < 0) {
        if (previous) return *previous;
        throw std::invalid_argument("no selectable qubit pair");
    }
    return best;
}

}  // namespace rabiforge
