// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace rabiforge {

ExactPropagator prepare(const PauliSum& h, int n_qubits) {
    const Eigen::MatrixXcd m = matrix_of(h, std::size_t(n_qubits));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigendecomposition failed");

    ExactPropagator prop;
    prop.n_qubits = n_qubits;
    prop.eigenvalues = solver.eigenvalues();
    prop.eigenvectors = solver.eigenvectors();

    const Eigen::MatrixXcd rebuilt = prop.eigenvectors *
                                     prop.eigenvalues.asDiagonal() *
                                     prop.eigenvectors.adjoint();
    if ((rebuilt - m).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("eigendecomposition reconstruction error too large");
    return prop;
}

StateVector evolve(const ExactPropagator& prop, const StateVector& state, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
    if (state.n_qubits != prop.n_qubits)
        throw std::invalid_argument("state register does not match the propagator");

    const Eigen::Index dim = Eigen::Index(state.dim());
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index b = 0; b < dim; ++b) psi(b) = state.amp[size_t(b)];

    Eigen::VectorXcd coeffs = prop.eigenvectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < dim; ++k)
        coeffs(k) *= std::exp(cx(0.0, -prop.eigenvalues(k) * t));
    psi = prop.eigenvectors * coeffs;

    StateVector out;
    out.n_qubits = state.n_qubits;
    out.amp.resize(size_t(dim));
    for (Eigen::Index b = 0; b < dim; ++b) out.amp[size_t(b)] = psi(b);
    return out;
}

}  // namespace rabiforge
