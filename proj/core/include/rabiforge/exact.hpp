// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "rabiforge/pauli.hpp"
#include "rabiforge/statevector.hpp"

namespace rabiforge {

/// Eigendecomposition of a dense Hermitian Hamiltonian; evolution at any t is
/// one diagonal phase multiply. Reference truth for every error column.
struct ExactPropagator {
    int n_qubits = 0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

ExactPropagator prepare(const PauliSum& h, int n_qubits);

/// V exp(-i Lambda t) V^dagger |psi>.
StateVector evolve(const ExactPropagator& prop, const StateVector& state, double t);

}  // namespace rabiforge
