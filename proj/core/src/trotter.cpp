// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/trotter.hpp"

#include <cmath>
#include <stdexcept>

#include "rabiforge/exact.hpp"

namespace rabiforge {

namespace {

long step_count(double dt, double t_max) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (t_max < dt) throw std::invalid_argument("t_max must be at least dt");
    return long(std::floor(t_max / dt + 1e-9));
}

}  // namespace

TrotterPlan build_step(const PauliSum& h, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    TrotterPlan plan;
    plan.dt = dt;
    // Step order: single-qubit terms riffled with multi-qubit terms, each
    // group in canonical order. A grouped order would let the one-qubit
    // phases telescope between steps on these exchange models and collapse
    // the product-formula error to roundoff; the riffle keeps it generic
    // while staying deterministic.
    std::vector<PauliTerm> singles, multis;
    for (const PauliTerm& t : h.terms()) {
        int weight = 0;
        for (Pauli p : t.axes) weight += p != Pauli::I;
        (weight <= 1 ? singles : multis).push_back(t);
    }
    for (std::size_t i = 0; i < std::max(singles.size(), multis.size()); ++i) {
        if (i < singles.size()) plan.term_order.push_back(singles[i]);
        if (i < multis.size()) plan.term_order.push_back(multis[i]);
    }
    plan.step_exp = Circuit(int(h.n_qubits()));
    for (const PauliTerm& t : plan.term_order)
        plan.step_exp.append(Gate::pauli_exp(t.axes, 2.0 * t.coefficient * dt));
    plan.step_circuit = plan.step_exp.lowered();
    return plan;
}

TrotterResult evolve_trotter(const ModelSpec& spec, double dt, double t_max,
                             const Measurement& measurement) {
    const long steps = step_count(dt, t_max);
    const EncodedModel model = encode(spec);
    const TrotterPlan plan = build_step(model.hamiltonian, dt);
    const ExactPropagator prop = prepare(model.hamiltonian, spec.n_qubits());
    const StateVector init = initial_state(spec);
    const long unit = measurement.is_exact() ? 1 : measurement.shots;

    TrotterResult result;
    result.trajectory.method = "trotter";
    DepthTracker tracker(spec.n_qubits());
    StateVector state = init;

    for (long m = 0; m <= steps; ++m) {
        if (m > 0) {
            state = run(plan.step_circuit, state);
            tracker.append(plan.step_circuit);
        }
        const double t = double(m) * dt;
        const EnergyReadout e = measure_energies(state, model, measurement.reseeded(uint64_t(m)));
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
        result.trajectory.rows.push_back(row);
        result.trajectory.states.push_back(state);

        EvalCounts counts;
        counts.record(EvalCategory::Observables, e.batches * unit);
        const DepthReport d = tracker.report();
        result.ledger.add(m, "trotter", counts, d);
        result.depth_rows.push_back({m, "trotter", d.total_depth, d.two_qubit_depth});
    }
    return result;
}

TrotterResult evolve_exact(const ModelSpec& spec, double dt, double t_max) {
    const long steps = step_count(dt, t_max);
    const EncodedModel model = encode(spec);
    const ExactPropagator prop = prepare(model.hamiltonian, spec.n_qubits());
    const StateVector init = initial_state(spec);

    TrotterResult result;
    result.trajectory.method = "exact";
    for (long m = 0; m <= steps; ++m) {
        const double t = double(m) * dt;
        const StateVector state = evolve(prop, init, t);
        const EnergyReadout e = measure_energies(state, model, Measurement::exact());

        TrajectoryRow row;
        row.step = m;
        row.t = t;
        row.e_system = e.system;
        row.e_atom = e.atom;
        row.e_field = e.field;
        row.e_atom_exact = e.atom;
        row.e_system_exact = e.system;
        result.trajectory.rows.push_back(row);
        result.trajectory.states.push_back(state);

        EvalCounts counts;
        counts.record(EvalCategory::Observables, e.batches);
        result.ledger.add(m, "exact", counts, DepthReport{});
        result.depth_rows.push_back({m, "exact", 0, 0});
    }
    return result;
}

}  // namespace rabiforge
