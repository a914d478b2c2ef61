// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/isl.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rabiforge/exact.hpp"
#include "rabiforge/nelder_mead.hpp"
#include "rabiforge/trotter.hpp"

namespace rabiforge {

namespace {

constexpr double kDropTol = 1e-9;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

/// One modification per call; returns false at the fixed point.
bool simplify_pass(std::vector<Gate>& gates, int n_qubits) {
    std::vector<int> last(size_t(n_qubits), -1);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        Gate& g = gates[i];
        const std::vector<int> qs = g.touched();

        if (g.is_rotation() && g.slot < 0) {
            if (std::abs(wrap_angle(g.angle)) < kDropTol) {
                gates.erase(gates.begin() + long(i));
                return true;
            }
            const int q = qs[0];
            const int j = last[size_t(q)];
            if (j >= 0 && gates[size_t(j)].kind == g.kind && gates[size_t(j)].slot < 0) {
                gates[size_t(j)].angle = wrap_angle(gates[size_t(j)].angle + g.angle);
                gates.erase(gates.begin() + long(i));
                return true;
            }
        } else if (g.kind == GateKind::CNOT) {
            const int jc = last[size_t(g.qubits[0])];
            const int jt = last[size_t(g.qubits[1])];
            if (jc >= 0 && jc == jt && gates[size_t(jc)].kind == GateKind::CNOT &&
                gates[size_t(jc)].qubits == g.qubits) {
                gates.erase(gates.begin() + long(i));
                gates.erase(gates.begin() + long(jc));
                return true;
            }
        }
        for (int q : qs) last[size_t(q)] = int(i);
    }
    return false;
}

}  // namespace

Circuit simplify(const Circuit& circuit) {
    Circuit out = circuit;
    while (simplify_pass(out.gates, out.n_qubits)) {
    }
    return out;
}

double isl_cost(const Circuit& target, const Circuit& body, const Measurement& measurement) {
    if (target.n_qubits != body.n_qubits)
        throw std::invalid_argument("target and ansatz act on different registers");
    const StateVector prepared = run(target, StateVector::zero_state(target.n_qubits));
    CostEvaluator evaluate(prepared, measurement, 1);
    return evaluate(body);
}

double CostEvaluator::operator()(const Circuit& body) {
    ++evals_;
    const double p = zero_overlap_from(body, target_);
    if (measurement_.is_exact()) return 1.0 - p;

    Rng rng(mix_seed(measurement_.seed, uint64_t(evals_)));
    long hits = 0;
    for (long s = 0; s < measurement_.shots; ++s)
        if (bernoulli(rng, p)) ++hits;
    return 1.0 - double(hits) / double(measurement_.shots);
}

BlockHandle append_block(Circuit& body, int control, int target) {
    if (control == target)
        throw std::invalid_argument("dressed block needs two distinct qubits");
    BlockHandle handle{};
    handle.rotation_gates[0] = body.gates.size();
    body.append(Gate::rz(control, 0.0));
    handle.rotation_gates[1] = body.gates.size();
    body.append(Gate::rz(target, 0.0));
    body.append(Gate::cnot(control, target));
    handle.rotation_gates[2] = body.gates.size();
    body.append(Gate::rz(control, 0.0));
    handle.rotation_gates[3] = body.gates.size();
    body.append(Gate::rz(target, 0.0));
    return handle;
}

double optimize_block(Circuit& body, const BlockHandle& handle, CostEvaluator& evaluate,
                      const IslConfig& config) {
    const double half_pi = std::numbers::pi / 2;
    double cycle_start = evaluate(body);
    double current = cycle_start;

    while (!evaluate.exhausted()) {
        for (std::size_t r = 0; r < 4 && !evaluate.exhausted(); ++r) {
            Gate& gate = body.gates[handle.rotation_gates[r]];
            const int q = gate.qubits[0];
            Pauli best_axis = gate.rotation_axis();
            double best_angle = gate.angle;
            double best_cost = current;

            for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
                gate = Gate::rotation(axis, q, 0.0);
                const double c0 = evaluate(body);
                gate.angle = half_pi;
                const double cq = evaluate(body);
                gate.angle = 2 * half_pi;
                const double cpi = evaluate(body);
                // cost(t) = a + b cos t + c sin t from three probes
                const double a = (c0 + cpi) / 2.0;
                const double b = (c0 - cpi) / 2.0;
                const double c = cq - a;
                const double radius = std::hypot(b, c);
                const double minimum = a - radius;
                if (minimum < best_cost) {
                    best_cost = minimum;
                    best_axis = axis;
                    best_angle = std::atan2(-c, -b);
                }
            }
            gate = Gate::rotation(best_axis, q, best_angle);
            current = evaluate(body);
        }
        if (current < config.tolerance) break;
        const double improvement = (cycle_start - current) / std::max(cycle_start, 1e-30);
        if (improvement < config.cycle_improvement_threshold) break;
        cycle_start = current;
    }
    return current;
}

double global_optimize(Circuit& body, CostEvaluator& evaluate, const IslConfig& config) {
    std::vector<std::size_t> rotations;
    for (std::size_t i = 0; i < body.gates.size(); ++i)
        if (body.gates[i].is_rotation() && body.gates[i].slot < 0) rotations.push_back(i);
    if (rotations.empty()) return evaluate(body);

    std::vector<double> best(rotations.size());
    for (std::size_t i = 0; i < rotations.size(); ++i) best[i] = body.gates[rotations[i]].angle;

    auto objective = [&](const std::vector<double>& x) {
        for (std::size_t i = 0; i < rotations.size(); ++i)
            body.gates[rotations[i]].angle = x[i];
        return evaluate(body);
    };

    // Restart the simplex from the incumbent with a varied scale; a single
    // collapsed simplex tends to stall a hair above the tolerance. Each call
    // is capped so one high-dimensional search cannot drain the step budget.
    double best_value = std::numeric_limits<double>::infinity();
    for (double scale : {0.1, 0.5}) {
        const long cap = 250 + 50 * long(rotations.size());
        const long remaining =
            std::min(cap, config.optimizer_budget - evaluate.evaluations());
        if (remaining <= 0) break;
        const NelderMeadResult result =
            nelder_mead(objective, best, scale, config.tolerance / 10.0, remaining);
        if (result.value < best_value) {
            best_value = result.value;
            best = result.x;
        }
        if (best_value < config.tolerance) break;
    }
    for (std::size_t i = 0; i < rotations.size(); ++i)
        body.gates[rotations[i]].angle = best[i];
    return std::isfinite(best_value) ? best_value : objective(best);
}

IslResult evolve_isl(const ModelSpec& spec, double dt, double t_max,
                     const IslConfig& config, const Measurement& measurement) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (t_max < dt) throw std::invalid_argument("t_max must be at least dt");
    const long steps = long(std::floor(t_max / dt + 1e-9));

    const EncodedModel model = encode(spec);
    const TrotterPlan plan = build_step(model.hamiltonian, dt);
    const ExactPropagator prop = prepare(model.hamiltonian, spec.n_qubits());
    const StateVector init = initial_state(spec);
    const long unit = measurement.is_exact() ? 1 : measurement.shots;
    const int n = spec.n_qubits();

    Circuit prep(n);
    for (int a = 1; a < n; ++a) prep.append(Gate::x(a));

    IslResult result;
    result.trajectory.method = "isl";
    result.trajectory.extra_name = "isl_cost";
    result.trajectory.has_flag_column = true;

    {
        const EnergyReadout e0 = measure_energies(init, model, measurement.reseeded(1));
        TrajectoryRow row;
        row.step = 0;
        row.e_system = e0.system;
        row.e_atom = e0.atom;
        row.e_field = e0.field;
        const EnergyReadout ex = measure_energies(init, model, Measurement::exact());
        row.e_atom_exact = ex.atom;
        row.e_system_exact = ex.system;
        row.abs_err_atom = std::abs(e0.atom - ex.atom);
        row.abs_err_system = std::abs(e0.system - ex.system);
        result.trajectory.rows.push_back(row);
        result.trajectory.states.push_back(init);
        EvalCounts counts;
        counts.record(EvalCategory::Observables, e0.batches * unit);
        const DepthReport d0 = depth(prep);
        result.ledger.add(0, "isl", counts, d0);
        result.depth_rows.push_back({0, "isl", d0.total_depth, d0.two_qubit_depth});
    }

    Circuit base = prep;
    for (long m = 1; m <= steps; ++m) {
        Circuit target(n);
        target.append(base);
        target.append(plan.step_circuit);
        target = simplify(target);
        const StateVector target_state = run(target, StateVector::zero_state(n));

        CostEvaluator evaluate(target_state, measurement.reseeded(uint64_t(2 * m)),
                               config.optimizer_budget);
        StructuralAnsatz ansatz;
        ansatz.body = Circuit(n);
        double cost = evaluate(ansatz.body);
        std::optional<std::pair<int, int>> previous_pair;
        std::vector<BlockHandle> handles;

        while (cost >= config.tolerance && int(handles.size()) < config.max_blocks &&
               !evaluate.exhausted()) {
            const auto pair = select_pair(target_state, previous_pair, config.paper_literal_entropy);
            previous_pair = pair;
            handles.push_back(append_block(ansatz.body, pair.first, pair.second));
            cost = optimize_block(ansatz.body, handles.back(), evaluate, config);
            // Cyclic refinement of every block before the joint optimisation.
            for (const BlockHandle& h : handles)
                cost = optimize_block(ansatz.body, h, evaluate, config);
            cost = global_optimize(ansatz.body, evaluate, config);
        }
        if (cost < config.tolerance && !handles.empty() && !evaluate.exhausted()) {
            // One polish round: the compiled circuit feeds the next target, so
            // pushing the cost below the stopping threshold keeps compile
            // drift out of the trajectory columns.
            for (const BlockHandle& h : handles)
                cost = optimize_block(ansatz.body, h, evaluate, config);
            cost = global_optimize(ansatz.body, evaluate, config);
        }
        const bool converged = cost < config.tolerance;
        for (const BlockHandle& handle : handles) {
            DressedBlock record;
            record.control = ansatz.body.gates[handle.rotation_gates[0]].qubits[0];
            record.target = ansatz.body.gates[handle.rotation_gates[1]].qubits[0];
            for (std::size_t r = 0; r < 4; ++r) {
                const Gate& g = ansatz.body.gates[handle.rotation_gates[r]];
                record.rotations[r] = {g.rotation_axis(), g.angle};
            }
            ansatz.blocks.push_back(record);
        }
        ansatz.body = simplify(ansatz.body);

        const Circuit compiled = ansatz.compiled();
        const StateVector state = run(compiled, StateVector::zero_state(n));
        const double t = double(m) * dt;
        const EnergyReadout e =
            measure_energies(state, model, measurement.reseeded(uint64_t(2 * m + 1)));
        const StateVector ref = evolve(prop, init, t);
        const EnergyReadout ex = measure_energies(ref, model, Measurement::exact());

        TrajectoryRow row;
        row.step = m;
        row.t = t;
        row.e_system = e.system;
        row.e_atom = e.atom;
        row.e_field = e.field;
        row.e_atom_exact = ex.atom;
        row.e_system_exact = ex.system;
        row.abs_err_atom = std::abs(e.atom - ex.atom);
        row.abs_err_system = std::abs(e.system - ex.system);
        row.extra = cost;
        row.flagged = !converged;
        result.trajectory.rows.push_back(row);
        result.trajectory.states.push_back(state);

        EvalCounts counts;
        counts.record(EvalCategory::Observables, e.batches * unit);
        counts.record(EvalCategory::CostProbes, evaluate.evaluations() * unit);
        const DepthReport d = depth(compiled);
        result.ledger.add(m, "isl", counts, d);
        result.depth_rows.push_back({m, "isl", d.total_depth, d.two_qubit_depth});

        IslStepRecord step_record;
        step_record.step = m;
        step_record.blocks = int(ansatz.blocks.size());
        step_record.cost_evals = evaluate.evaluations();
        step_record.final_cost = cost;
        step_record.converged = converged;
        step_record.block_list = ansatz.blocks;
        result.steps.push_back(std::move(step_record));

        base = compiled;
    }
    return result;
}

std::string ansatz_dump(const std::vector<IslStepRecord>& steps) {
    std::string out;
    char buf[160];
    for (const IslStepRecord& s : steps) {
        std::snprintf(buf, sizeof(buf), "step %ld blocks=%d cost=%.6g evals=%ld converged=%d\n",
                      s.step, s.blocks, s.final_cost, s.cost_evals, int(s.converged));
        out += buf;
        for (const DressedBlock& b : s.block_list) {
            std::snprintf(buf, sizeof(buf), "  (%d,%d): %c:%.6g %c:%.6g | %c:%.6g %c:%.6g\n",
                          b.control, b.target,
                          pauli_char(b.rotations[0].axis), b.rotations[0].angle,
                          pauli_char(b.rotations[1].axis), b.rotations[1].angle,
                          pauli_char(b.rotations[2].axis), b.rotations[2].angle,
                          pauli_char(b.rotations[3].axis), b.rotations[3].angle);
            out += buf;
        }
    }
    return out;
}

}  // namespace rabiforge
