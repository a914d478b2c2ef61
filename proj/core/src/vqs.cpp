// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/vqs.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rabiforge/exact.hpp"

namespace rabiforge {

namespace {

std::vector<std::pair<int, int>> entangler_pattern(int n_qubits) {
    std::vector<std::pair<int, int>> pattern;
    for (int c = n_qubits - 1; c >= 1; --c)
        for (int t = c - 1; t >= 0; --t) pattern.push_back({c, t});
    return pattern;
}

cx inner(const StateVector& a, const StateVector& b) {
    cx acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.amp.size(); ++k)
        acc += std::conj(a.amp[k]) * b.amp[k];
    return acc;
}

std::vector<Pauli> slot_payload(int n_total, int qubit, Pauli axis) {
    std::vector<Pauli> payload(size_t(n_total), Pauli::I);
    payload[size_t(qubit)] = axis;
    return payload;
}

}  // namespace

VqsAnsatz build_ansatz(const ModelSpec& spec, int layers) {
    spec.validate();
    if (layers < 2 || layers % 2 != 0)
        throw std::invalid_argument(
            "ansatz layers must be even (>= 2) so the zero-angle body is the identity");
    const int n = spec.n_qubits();

    VqsAnsatz ansatz;
    ansatz.layers = layers;
    ansatz.circuit = Circuit(n);
    for (int a = 1; a < n; ++a) ansatz.circuit.append(Gate::x(a));

    const auto pattern = entangler_pattern(n);
    int slot = 0;
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            for (Pauli axis : {Pauli::X, Pauli::Y, Pauli::Z}) {
                ansatz.slot_gate_index.push_back(ansatz.circuit.gates.size());
                ansatz.slot_axis.push_back(axis);
                ansatz.slot_qubit.push_back(q);
                Gate g = Gate::rotation(axis, q, 0.0);
                g.slot = slot++;
                ansatz.circuit.append(std::move(g));
            }
        }
        if (layer % 2 == 0) {
            for (const auto& [c, t] : pattern) ansatz.circuit.append(Gate::cnot(c, t));
        } else {
            for (auto it = pattern.rbegin(); it != pattern.rend(); ++it)
                ansatz.circuit.append(Gate::cnot(it->first, it->second));
        }
    }
    ansatz.n_params = slot;
    return ansatz;
}

StateVector derivative_state(const VqsAnsatz& ansatz, const std::vector<double>& params,
                             int i) {
    if (i < 0 || i >= ansatz.n_params)
        throw std::out_of_range("parameter index out of range");
    if (int(params.size()) != ansatz.n_params)
        throw std::invalid_argument("parameter count mismatch");

    const int n = ansatz.circuit.n_qubits;
    StateVector state = StateVector::zero_state(n);
    const std::size_t pos = ansatz.slot_gate_index[size_t(i)];
    auto apply_bound = [&](const Gate& g) {
        if (g.slot >= 0) {
            Gate bound = g;
            bound.angle = params[size_t(g.slot)];
            bound.slot = -1;
            apply_gate(state, bound);
        } else {
            apply_gate(state, g);
        }
    };
    for (std::size_t g = 0; g < pos; ++g) apply_bound(ansatz.circuit.gates[g]);
    state = apply_pauli_string(
        state, slot_payload(n, ansatz.slot_qubit[size_t(i)], ansatz.slot_axis[size_t(i)]));
    for (std::size_t g = pos; g < ansatz.circuit.gates.size(); ++g)
        apply_bound(ansatz.circuit.gates[g]);

    const cx factor{0.0, -0.5};
    for (cx& a : state.amp) a *= factor;
    return state;
}

namespace {

McLachlanSystem assemble_direct(const VqsAnsatz& ansatz, const std::vector<double>& params,
                                const PauliSum& h, long unit, EvalCounts* counter) {
    const int n = ansatz.n_params;
    McLachlanSystem sys;
    sys.a = Eigen::MatrixXd::Zero(n, n);
    sys.c = Eigen::VectorXd::Zero(n);
    sys.phase_overlaps = Eigen::VectorXd::Zero(n);

    const StateVector psi =
        run(ansatz.circuit, params, StateVector::zero_state(ansatz.circuit.n_qubits));
    std::vector<StateVector> derivs;
    derivs.reserve(size_t(n));
    for (int i = 0; i < n; ++i) derivs.push_back(derivative_state(ansatz, params, i));

    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double value = inner(derivs[size_t(i)], derivs[size_t(j)]).real();
            sys.a(i, j) = value;
            sys.a(j, i) = value;
        }
    if (counter)
        counter->record(EvalCategory::MatrixElements, unit * long(n) * long(n + 1) / 2);

    for (const PauliTerm& term : h.terms()) {
        const StateVector pk_psi = apply_pauli_string(psi, term.axes);
        for (int i = 0; i < n; ++i)
            sys.c(i) += term.coefficient * inner(derivs[size_t(i)], pk_psi).imag();
    }
    if (counter)
        counter->record(EvalCategory::MatrixElements, unit * long(n) * long(h.terms().size()));

    // Global-phase row <psi|phi_i> with phi_i = 2i d_i; real by construction.
    for (int i = 0; i < n; ++i)
        sys.phase_overlaps(i) = -2.0 * inner(psi, derivs[size_t(i)]).imag();
    if (counter && h.identity_offset() != 0.0)
        counter->record(EvalCategory::MatrixElements, unit * long(n));
    return sys;
}

McLachlanSystem assemble_hadamard(const VqsAnsatz& ansatz, const std::vector<double>& params,
                                  const PauliSum& h, long unit,
                                  const Measurement& measurement, EvalCounts* counter) {
    const int n = ansatz.n_params;
    const int n_sys = ansatz.circuit.n_qubits;
    const int ancilla = n_sys;
    McLachlanSystem sys;
    sys.a = Eigen::MatrixXd::Zero(n, n);
    sys.c = Eigen::VectorXd::Zero(n);
    sys.phase_overlaps = Eigen::VectorXd::Zero(n);

    const Circuit bound = ansatz.circuit.bound(params);
    auto widened_gate = [&](const Gate& g) {
        Gate wide = g;
        if (!wide.pauli.empty()) wide.pauli.resize(size_t(n_sys + 1), Pauli::I);
        return wide;
    };
    auto insertion = [&](int slot) {
        return Gate::controlled_pauli(
            ancilla, slot_payload(n_sys + 1, ansatz.slot_qubit[size_t(slot)],
                                  ansatz.slot_axis[size_t(slot)]));
    };

    std::uint64_t salt = 0;
    auto evaluate = [&](const Circuit& c) {
        const double value = hadamard_test(c, {}, false, measurement.reseeded(salt++));
        if (counter) counter->record(EvalCategory::MatrixElements, unit);
        return value;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Circuit c(n_sys + 1);
            c.append(Gate::h(ancilla));
            const std::size_t pos_i = ansatz.slot_gate_index[size_t(i)];
            const std::size_t pos_j = ansatz.slot_gate_index[size_t(j)];
            for (std::size_t g = 0; g < pos_i; ++g) c.append(widened_gate(bound.gates[g]));
            c.append(insertion(i));
            for (std::size_t g = pos_i; g < pos_j; ++g) c.append(widened_gate(bound.gates[g]));
            c.append(insertion(j));
            c.append(Gate::h(ancilla));
            const double value = evaluate(c);
            sys.a(i, j) = value / 4.0;
            sys.a(j, i) = value / 4.0;
        }
    }

    for (int i = 0; i < n; ++i) {
        const std::size_t pos_i = ansatz.slot_gate_index[size_t(i)];
        for (const PauliTerm& term : h.terms()) {
            Circuit c(n_sys + 1);
            c.append(Gate::h(ancilla));
            for (std::size_t g = 0; g < pos_i; ++g) c.append(widened_gate(bound.gates[g]));
            c.append(insertion(i));
            for (std::size_t g = pos_i; g < bound.gates.size(); ++g)
                c.append(widened_gate(bound.gates[g]));
            std::vector<Pauli> payload = term.axes;
            payload.resize(size_t(n_sys + 1), Pauli::I);
            c.append(Gate::controlled_pauli(ancilla, payload));
            c.append(Gate::h(ancilla));
            sys.c(i) += term.coefficient / 2.0 * evaluate(c);
        }
        if (h.identity_offset() != 0.0) {
            Circuit c(n_sys + 1);
            c.append(Gate::h(ancilla));
            for (std::size_t g = 0; g < pos_i; ++g) c.append(widened_gate(bound.gates[g]));
            c.append(insertion(i));
            for (std::size_t g = pos_i; g < bound.gates.size(); ++g)
                c.append(widened_gate(bound.gates[g]));
            c.append(Gate::h(ancilla));
            sys.phase_overlaps(i) = evaluate(c);
        }
    }
    return sys;
}

}  // namespace

McLachlanSystem assemble(const VqsAnsatz& ansatz, const std::vector<double>& params,
                         const PauliSum& h, AssembleMode mode,
                         const Measurement& measurement, EvalCounts* counter) {
    if (!measurement.is_exact() && measurement.shots < 1)
        throw std::invalid_argument("shot mode needs shots >= 1 and a seed");
    const long unit = measurement.is_exact() ? 1 : measurement.shots;
    if (mode == AssembleMode::Direct) {
        if (!measurement.is_exact())
            throw std::invalid_argument("direct assembly is a statevector path; use exact measurement");
        return assemble_direct(ansatz, params, h, unit, counter);
    }
    return assemble_hadamard(ansatz, params, h, unit, measurement, counter);
}

SolveResult solve(const McLachlanSystem& system, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    const Eigen::MatrixXd& a = system.a;
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd normal = a.transpose() * a;

    if (lambda == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal);
        const double max_ev = es.eigenvalues().cwiseAbs().maxCoeff();
        const double min_ev = es.eigenvalues().minCoeff();
        if (max_ev <= 0.0 || min_ev < max_ev * 1e-14) {
            const double cond = max_ev / std::max(min_ev, 1e-300);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3g", cond);
            throw std::runtime_error(
                "unregularised McLachlan solve on a singular system (condition number " +
                std::string(buf) + "); set lambda > 0");
        }
    }
    normal += lambda * Eigen::MatrixXd::Identity(n, n);

    SolveResult out;
    out.theta_dot = normal.ldlt().solve(a.transpose() * system.c);
    out.residual = (a * out.theta_dot - system.c).norm();
    return out;
}

VqsResult evolve_vqs(const ModelSpec& spec, const VqsConfig& config, double dt,
                     double t_max, const Measurement& measurement) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (t_max < dt) throw std::invalid_argument("t_max must be at least dt");
    const long steps = long(std::floor(t_max / dt + 1e-9));

    const EncodedModel model = encode(spec);
    const VqsAnsatz ansatz = build_ansatz(spec, config.layers);
    const ExactPropagator prop = prepare(model.hamiltonian, spec.n_qubits());
    const StateVector init = initial_state(spec);
    const long unit = measurement.is_exact() ? 1 : measurement.shots;
    const DepthReport ansatz_depth = depth(ansatz.circuit);
    // Shot-based runs measure matrix elements on circuits, so the direct
    // statevector shortcut is only available in exact mode.
    const AssembleMode mode =
        measurement.is_exact() ? config.mode : AssembleMode::HadamardTest;

    VqsResult result;
    result.trajectory.method = "vqs";
    result.trajectory.extra_name = "vqs_residual";

    std::vector<double> theta(size_t(ansatz.n_params), 0.0);
    int sign = 0;  // pinned on the first update

    for (long m = 0; m <= steps; ++m) {
        const double t = double(m) * dt;
        const StateVector psi =
            run(ansatz.circuit, theta, StateVector::zero_state(spec.n_qubits()));
        EvalCounts counts;
        const EnergyReadout e =
            measure_energies(psi, model, measurement.reseeded(uint64_t(2 * m + 1)));
        counts.record(EvalCategory::Observables, e.batches * unit);
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
        result.parameter_history.push_back(theta);

        if (m < steps) {
            const McLachlanSystem sys =
                assemble(ansatz, theta, model.hamiltonian, mode,
                         measurement.reseeded(uint64_t(2 * m)), &counts);
            SolveResult solved;
            try {
                solved = solve(sys, config.lambda);
            } catch (const std::exception& err) {
                throw std::runtime_error("vqs solve failed at step " + std::to_string(m) +
                                         ": " + err.what());
            }
            row.extra = solved.residual;

            if (sign == 0) {
                sign = 1;
                if (solved.theta_dot.norm() > 1e-14) {
                    const StateVector exact_next = evolve(prop, init, t + dt);
                    double best_fidelity = -1.0;
                    for (int candidate : {+1, -1}) {
                        std::vector<double> trial = theta;
                        for (int i = 0; i < ansatz.n_params; ++i)
                            trial[size_t(i)] += candidate * solved.theta_dot(i) * dt;
                        const StateVector predicted = run(
                            ansatz.circuit, trial, StateVector::zero_state(spec.n_qubits()));
                        cx overlap{0.0, 0.0};
                        for (std::size_t k = 0; k < predicted.amp.size(); ++k)
                            overlap += std::conj(predicted.amp[k]) * exact_next.amp[k];
                        const double fidelity = std::norm(overlap);
                        if (fidelity > best_fidelity) {
                            best_fidelity = fidelity;
                            sign = candidate;
                        }
                    }
                }
                result.ci_sign = sign;
                result.trajectory.metadata["ci_sign"] = std::to_string(sign);
            }
            for (int i = 0; i < ansatz.n_params; ++i)
                theta[size_t(i)] += sign * solved.theta_dot(i) * dt;
        }

        result.trajectory.rows.push_back(row);
        result.trajectory.states.push_back(psi);
        result.ledger.add(m, "vqs", counts, ansatz_depth);
        result.depth_rows.push_back(
            {m, "vqs", ansatz_depth.total_depth, ansatz_depth.two_qubit_depth});
    }
    return result;
}

std::string parameter_history_csv(const VqsResult& result) {
    std::string out = "step,t";
    const std::size_t n =
        result.parameter_history.empty() ? 0 : result.parameter_history.front().size();
    for (std::size_t i = 1; i <= n; ++i) out += ",theta_" + std::to_string(i);
    out += ",residual\n";
    for (std::size_t r = 0; r < result.trajectory.rows.size(); ++r) {
        const TrajectoryRow& row = result.trajectory.rows[r];
        out += std::to_string(row.step) + ',' + format_sig(row.t);
        for (double v : result.parameter_history[r]) out += ',' + format_sig(v);
        out += ',' + format_sig(row.extra);
        out += '\n';
    }
    return out;
}

}  // namespace rabiforge
