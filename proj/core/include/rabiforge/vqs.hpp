// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "rabiforge/circuit.hpp"
#include "rabiforge/ledger.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/trajectory.hpp"

namespace rabiforge {

/// Hardware-efficient ansatz: X preparation on the atom qubits, then per
/// layer RX,RY,RZ on every qubit followed by the model's CNOT entangling
/// pattern. Consecutive layers mirror the entangler order so the zero-angle
/// body collapses to the identity; the layer count must therefore be even.
struct VqsAnsatz {
    Circuit circuit;
    int n_params = 0;
    int layers = 0;
    std::vector<std::size_t> slot_gate_index;  // slot -> gate position
    std::vector<Pauli> slot_axis;              // generator of that rotation
    std::vector<int> slot_qubit;
};

VqsAnsatz build_ansatz(const ModelSpec& spec, int layers = 2);

/// d|psi>/d(theta_i): the generator (factor -i/2) inserted before rotation i,
/// remainder of the circuit applied. Unnormalised; norm is 1/2.
StateVector derivative_state(const VqsAnsatz& ansatz, const std::vector<double>& params,
                             int i);

struct McLachlanSystem {
    Eigen::MatrixXd a;               // Re <d_i psi | d_j psi>
    Eigen::VectorXd c;               // Im sum_k c_k <d_i psi| P_k |psi>
    Eigen::VectorXd phase_overlaps;  // Re <psi | sigma_i-inserted psi>, diagnostic
};

enum class AssembleMode { Direct, HadamardTest };

/// Builds A and C. Direct mode works from derivative-state inner products;
/// HadamardTest mode builds the ancilla interferometry circuits (controlled
/// generator insertions between the ansatz gates) and reads each element from
/// hadamard_test. Only the upper triangle of A is evaluated. When the
/// Hamiltonian carries an identity offset, the per-slot global-phase overlap
/// row is also evaluated (it never feeds C).
McLachlanSystem assemble(const VqsAnsatz& ansatz, const std::vector<double>& params,
                         const PauliSum& h, AssembleMode mode,
                         const Measurement& measurement, EvalCounts* counter = nullptr);

struct SolveResult {
    Eigen::VectorXd theta_dot;
    double residual = 0.0;
};

/// Tikhonov-regularised solve of A theta_dot = C:
/// theta_dot = (A^T A + lambda I)^-1 A^T C.
SolveResult solve(const McLachlanSystem& system, double lambda);

struct VqsConfig {
    int layers = 2;
    double lambda = 1e-6;
    AssembleMode mode = AssembleMode::Direct;
};

struct VqsResult {
    Trajectory trajectory;
    EvalLedger ledger;
    std::vector<DepthRow> depth_rows;
    std::vector<std::vector<double>> parameter_history;  // theta at each row
    int ci_sign = 1;
};

/// Euler-steps the ansatz parameters from theta = 0. The global sign of C is
/// fixed once at t = 0 by checking which Euler prediction moves toward the
/// exact-oracle state, then held for the whole run.
VqsResult evolve_vqs(const ModelSpec& spec, const VqsConfig& config, double dt,
                     double t_max, const Measurement& measurement);

/// step,t,theta_1..theta_n,residual rows (flag-gated CLI output).
std::string parameter_history_csv(const VqsResult& result);

}  // namespace rabiforge
