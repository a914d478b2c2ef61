// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>

#include "rabiforge/circuit.hpp"
#include "rabiforge/entanglement.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/trajectory.hpp"

namespace rabiforge {

struct IslConfig {
    double tolerance = 1e-4;
    double cycle_improvement_threshold = 0.01;  // relative, between block cycles
    int max_blocks = 20;                        // per compiled step
    long optimizer_budget = 60000;              // cost evaluations per compiled step
    bool paper_literal_entropy = false;
};

struct BlockRotation {
    Pauli axis = Pauli::Z;
    double angle = 0.0;
};

/// A CNOT dressed with one rotation per qubit before and after it, the ISL
/// growth unit. Order: pre-control, pre-target, CNOT, post-control,
/// post-target.
struct DressedBlock {
    int control = 0;
    int target = 1;
    std::array<BlockRotation, 4> rotations;
};

/// The inverse-ansatz chain appended after the target circuit: cost probes
/// run `body` on the prepared target state and read the vacuum amplitude.
/// The state-preparing ansatz itself is body.inverted().
struct StructuralAnsatz {
    Circuit body;
    std::vector<DressedBlock> blocks;  // as appended, before simplification
    Circuit compiled() const { return body.inverted(); }
};

/// 1 - |<0..0| body . target |0..0>|^2, exact or shot-estimated.
double isl_cost(const Circuit& target, const Circuit& body, const Measurement& measurement);

/// Peephole pass to a fixed point: merge adjacent same-axis rotations on a
/// qubit (angles summed mod 2pi), drop rotations below 1e-9, cancel adjacent
/// identical CNOT pairs. Preserves the unitary up to global phase.
Circuit simplify(const Circuit& circuit);

/// Counting cost-function oracle over a cached target state. Derives one
/// fresh sampling seed per call in shot mode.
class CostEvaluator {
  public:
    CostEvaluator(StateVector target_state, Measurement measurement, long budget)
        : target_(std::move(target_state)), measurement_(measurement), budget_(budget) {}

    double operator()(const Circuit& body);
    long evaluations() const { return evals_; }
    bool exhausted() const { return evals_ >= budget_; }

  private:
    StateVector target_;
    Measurement measurement_;
    long budget_ = 0;
    long evals_ = 0;
};

struct BlockHandle {
    std::array<std::size_t, 4> rotation_gates;
};

/// Appends a fresh zero-angle dressed block acting on (control, target).
BlockHandle append_block(Circuit& body, int control, int target);

/// Cyclic single-rotation optimisation of one block: per rotation, each axis
/// is probed at angles {0, pi/2, pi}, the exactly sinusoidal cost
/// a + b cos(t) + c sin(t) is reconstructed and minimised in closed form, and
/// the best (axis, angle) is kept. Cycles until the relative improvement
/// drops below the configured threshold. Returns the latest measured cost.
double optimize_block(Circuit& body, const BlockHandle& handle, CostEvaluator& evaluate,
                      const IslConfig& config);

/// Nelder-Mead over every rotation angle in the body, axes fixed.
double global_optimize(Circuit& body, CostEvaluator& evaluate, const IslConfig& config);

struct IslStepRecord {
    long step = 0;
    int blocks = 0;
    long cost_evals = 0;
    double final_cost = 0.0;
    bool converged = true;
    std::vector<DressedBlock> block_list;
};

struct IslResult {
    Trajectory trajectory;
    EvalLedger ledger;
    std::vector<DepthRow> depth_rows;
    std::vector<IslStepRecord> steps;
};

/// Per-step recompilation loop: target_m = simplify(previous compiled ansatz
/// (X preparation gates at step 1) ++ Trotter step); blocks are appended on
/// the highest-entanglement pair and optimised until the cost beats the
/// tolerance or the block/budget caps hit, then the compiled circuit carries
/// the state and feeds the next target.
IslResult evolve_isl(const ModelSpec& spec, double dt, double t_max,
                     const IslConfig& config, const Measurement& measurement);

/// Text listing of the per-step blocks, "(qa,qb): axis:angle x4" per block.
std::string ansatz_dump(const std::vector<IslStepRecord>& steps);

}  // namespace rabiforge
