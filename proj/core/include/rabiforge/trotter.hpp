// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rabiforge/circuit.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/pauli.hpp"
#include "rabiforge/trajectory.hpp"

namespace rabiforge {

/// One first-order product-formula step. Each non-identity term c*P becomes
/// exp(-i c P dt), i.e. a PauliExp gate with angle 2*c*dt, in the canonical
/// term order; the identity offset is a global phase and emits no gate.
struct TrotterPlan {
    Circuit step_exp;      // PauliExp form, one gate per term
    Circuit step_circuit;  // lowered primitive form (what depth counts)
    double dt = 0.0;
    std::vector<PauliTerm> term_order;
};

TrotterPlan build_step(const PauliSum& h, double dt);

struct TrotterResult {
    Trajectory trajectory;
    EvalLedger ledger;
    std::vector<DepthRow> depth_rows;
};

/// Direct Trotterisation: the state after m steps is the m-fold application
/// of the step circuit to the initial state. Records energies, exact-oracle
/// references and absolute errors at every step.
TrotterResult evolve_trotter(const ModelSpec& spec, double dt, double t_max,
                             const Measurement& measurement);

/// Reference trajectory evolved purely by the exact propagator (the
/// `exact` method of the CLI).
TrotterResult evolve_exact(const ModelSpec& spec, double dt, double t_max);

}  // namespace rabiforge
