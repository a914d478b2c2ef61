// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rabiforge {

namespace {

constexpr cx kImag{0.0, 1.0};

std::size_t qubit_mask(int q, int n_qubits) {
    return std::size_t(1) << (n_qubits - 1 - q);
}

void apply_single_qubit(StateVector& state, int q, const cx& u00, const cx& u01,
                        const cx& u10, const cx& u11) {
    const std::size_t mask = qubit_mask(q, state.n_qubits);
    const std::size_t dim = state.dim();
    for (std::size_t b = 0; b < dim; ++b) {
        if (b & mask) continue;
        const cx a0 = state.amp[b];
        const cx a1 = state.amp[b | mask];
        state.amp[b] = u00 * a0 + u01 * a1;
        state.amp[b | mask] = u10 * a0 + u11 * a1;
    }
}

/// Phase and flipped index of P|b> for a Pauli string.
inline cx pauli_basis_action(const std::vector<Pauli>& axes, std::size_t b, int n_qubits,
                             std::size_t& b_out) {
    cx phase{1.0, 0.0};
    std::size_t flip = 0;
    for (int q = 0; q < n_qubits; ++q) {
        const Pauli p = axes[size_t(q)];
        if (p == Pauli::I) continue;
        const std::size_t mask = qubit_mask(q, n_qubits);
        const bool bit = (b & mask) != 0;
        switch (p) {
            case Pauli::X:
                flip |= mask;
                break;
            case Pauli::Y:
                flip |= mask;
                phase *= bit ? -kImag : kImag;
                break;
            case Pauli::Z:
                if (bit) phase = -phase;
                break;
            default:
                break;
        }
    }
    b_out = b ^ flip;
    return phase;
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
    return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::size_t index) {
    // dense cap plus one ancilla wire for the interferometry circuits
    if (n_qubits < 0 || n_qubits > int(kDenseQubitCap) + 1)
        throw std::length_error("register exceeds the dense simulation cap");
    StateVector s;
    s.n_qubits = n_qubits;
    s.amp.assign(std::size_t(1) << n_qubits, cx{0.0, 0.0});
    s.amp.at(index) = cx{1.0, 0.0};
    return s;
}

double StateVector::norm2() const {
    double acc = 0.0;
    for (const cx& a : amp) acc += std::norm(a);
    return acc;
}

void apply_gate(StateVector& state, const Gate& gate) {
    const int n = state.n_qubits;
    switch (gate.kind) {
        case GateKind::RX: {
            const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
            apply_single_qubit(state, gate.qubits[0], c, -kImag * s, -kImag * s, c);
            return;
        }
        case GateKind::RY: {
            const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
            apply_single_qubit(state, gate.qubits[0], c, -s, s, c);
            return;
        }
        case GateKind::RZ: {
            const cx e0 = std::exp(-kImag * (gate.angle / 2));
            const cx e1 = std::exp(kImag * (gate.angle / 2));
            apply_single_qubit(state, gate.qubits[0], e0, 0.0, 0.0, e1);
            return;
        }
        case GateKind::X:
            apply_single_qubit(state, gate.qubits[0], 0.0, 1.0, 1.0, 0.0);
            return;
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            apply_single_qubit(state, gate.qubits[0], r, r, r, -r);
            return;
        }
        case GateKind::S:
            apply_single_qubit(state, gate.qubits[0], 1.0, 0.0, 0.0, kImag);
            return;
        case GateKind::CNOT: {
            const std::size_t cmask = qubit_mask(gate.qubits[0], n);
            const std::size_t tmask = qubit_mask(gate.qubits[1], n);
            for (std::size_t b = 0; b < state.dim(); ++b)
                if ((b & cmask) && !(b & tmask))
                    std::swap(state.amp[b], state.amp[b | tmask]);
            return;
        }
        case GateKind::ControlledPauli: {
            const std::size_t cmask = qubit_mask(gate.qubits[0], n);
            std::vector<cx> out = state.amp;
            for (std::size_t b = 0; b < state.dim(); ++b) {
                if (!(b & cmask)) continue;
                std::size_t bp;
                const cx phase = pauli_basis_action(gate.pauli, b, n, bp);
                out[bp] = phase * state.amp[b];
            }
            state.amp = std::move(out);
            return;
        }
        case GateKind::PauliExp: {
            // exp(-i a P / 2) |psi> = cos(a/2)|psi> - i sin(a/2) P|psi>
            const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
            const StateVector rotated = apply_pauli_string(state, gate.pauli);
            for (std::size_t b = 0; b < state.dim(); ++b)
                state.amp[b] = c * state.amp[b] - kImag * s * rotated.amp[b];
            return;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

StateVector apply_pauli_string(const StateVector& state, const std::vector<Pauli>& axes) {
    if (int(axes.size()) != state.n_qubits)
        throw std::invalid_argument("Pauli string length does not match the register");
    StateVector out;
    out.n_qubits = state.n_qubits;
    out.amp.assign(state.dim(), cx{0.0, 0.0});
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (state.amp[b] == cx{0.0, 0.0}) continue;
        std::size_t bp;
        const cx phase = pauli_basis_action(axes, b, state.n_qubits, bp);
        out.amp[bp] += phase * state.amp[b];
    }
    return out;
}

StateVector run(const Circuit& circuit, const std::vector<double>& params,
                const StateVector& initial) {
    if (int(params.size()) != circuit.n_parameters())
        throw std::invalid_argument("parameter count does not match circuit slots");
    if (circuit.n_qubits != initial.n_qubits)
        throw std::invalid_argument("initial state register size mismatch");
    StateVector state = initial;
    for (const Gate& g : circuit.gates) {
        if (g.slot >= 0) {
            Gate bound = g;
            bound.angle = params[size_t(g.slot)];
            bound.slot = -1;
            apply_gate(state, bound);
        } else {
            apply_gate(state, g);
        }
    }
    return state;
}

StateVector run(const Circuit& circuit, const StateVector& initial) {
    return run(circuit, {}, initial);
}

double term_expectation(const StateVector& state, const std::vector<Pauli>& axes) {
    const StateVector transformed = apply_pauli_string(state, axes);
    cx acc{0.0, 0.0};
    for (std::size_t b = 0; b < state.dim(); ++b)
        acc += std::conj(state.amp[b]) * transformed.amp[b];
    return acc.real();
}

double expectation(const StateVector& state, const PauliSum& obs) {
    if (obs.n_qubits() != 0 && int(obs.n_qubits()) != state.n_qubits)
        throw std::invalid_argument("observable register size mismatch");
    double value = obs.identity_offset();
    for (const PauliTerm& t : obs.terms())
        value += t.coefficient * term_expectation(state, t.axes);
    return value;
}

std::vector<double> sample_term_expectations(const StateVector& state, const PauliSum& obs,
                                             long shots_per_term, std::uint64_t seed,
                                             long* batches) {
    if (shots_per_term < 1)
        throw std::invalid_argument("shots_per_term must be >= 1");
    if (obs.n_qubits() != 0 && int(obs.n_qubits()) != state.n_qubits)
        throw std::invalid_argument("observable register size mismatch");
    Rng rng(seed);
    std::vector<double> estimates;
    estimates.reserve(obs.terms().size());
    long used = 0;
    for (const PauliTerm& t : obs.terms()) {
        const double exact = term_expectation(state, t.axes);
        const double p_plus = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
        long plus = 0;
        for (long s = 0; s < shots_per_term; ++s)
            if (bernoulli(rng, p_plus)) ++plus;
        estimates.push_back(2.0 * double(plus) / double(shots_per_term) - 1.0);
        ++used;
    }
    if (obs.identity_offset() != 0.0) {
        // The tracked identity component is charged as one batch; its
        // outcome distribution is concentrated on +1.
        for (long s = 0; s < shots_per_term; ++s) (void)uniform01(rng);
        ++used;
    }
    if (batches) *batches = used;
    return estimates;
}

double sample_expectation(const StateVector& state, const PauliSum& obs,
                          long shots_per_term, std::uint64_t seed) {
    const std::vector<double> est = sample_term_expectations(state, obs, shots_per_term, seed);
    double value = obs.identity_offset();
    for (std::size_t k = 0; k < est.size(); ++k)
        value += obs.terms()[k].coefficient * est[k];
    return value;
}

double zero_overlap(const Circuit& circuit, const std::vector<double>& params) {
    const StateVector out = run(circuit, params, StateVector::zero_state(circuit.n_qubits));
    return std::norm(out.amp[0]);
}

double zero_overlap_from(const Circuit& tail, const StateVector& prepared) {
    const StateVector out = run(tail, prepared);
    return std::norm(out.amp[0]);
}

DensityMatrix reduce(const StateVector& state, int keep_a, int keep_b) {
    const int n = state.n_qubits;
    if (keep_a == keep_b || keep_a < 0 || keep_b < 0 || keep_a >= n || keep_b >= n)
        throw std::invalid_argument("reduce needs two distinct in-range qubits");
    const std::size_t mask_a = qubit_mask(keep_a, n);
    const std::size_t mask_b = qubit_mask(keep_b, n);
    DensityMatrix rho;
    rho.n_kept = 2;
    rho.mat = Eigen::MatrixXcd::Zero(4, 4);
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (state.amp[b] == cx{0.0, 0.0}) continue;
        const int r = 2 * int((b & mask_a) != 0) + int((b & mask_b) != 0);
        const std::size_t env = b & ~(mask_a | mask_b);
        for (int c = 0; c < 4; ++c) {
            std::size_t b2 = env;
            if (c & 2) b2 |= mask_a;
            if (c & 1) b2 |= mask_b;
            rho.mat(r, c) += state.amp[b] * std::conj(state.amp[b2]);
        }
    }
    return rho;
}

double hadamard_test(const Circuit& ancilla_circuit, const std::vector<double>& params,
                     bool imaginary_part, const Measurement& measurement) {
    const int n = ancilla_circuit.n_qubits;
    const int ancilla = n - 1;
    // Wiring check: leading H (then S for the imaginary variant) and a
    // trailing H on the ancilla; controlled insertions keyed to the ancilla.
    std::vector<const Gate*> on_ancilla;
    for (const Gate& g : ancilla_circuit.gates) {
        const auto touched = g.touched();
        if (std::find(touched.begin(), touched.end(), ancilla) != touched.end())
            on_ancilla.push_back(&g);
        if (g.kind == GateKind::ControlledPauli && g.qubits[0] != ancilla)
            throw std::invalid_argument("hadamard_test: controlled insertion not keyed to the ancilla");
    }
    const std::size_t expected_min = imaginary_part ? 3u : 2u;
    if (on_ancilla.size() < expected_min ||
        on_ancilla.front()->kind != GateKind::H ||
        on_ancilla.back()->kind != GateKind::H ||
        (imaginary_part && on_ancilla[1]->kind != GateKind::S))
        throw std::invalid_argument("hadamard_test: malformed ancilla wiring");

    const StateVector out = run(ancilla_circuit, params, StateVector::zero_state(n));
    const std::size_t anc_mask = qubit_mask(ancilla, n);
    double p0 = 0.0;
    for (std::size_t b = 0; b < out.dim(); ++b)
        if (!(b & anc_mask)) p0 += std::norm(out.amp[b]);
    p0 = std::clamp(p0, 0.0, 1.0);

    if (measurement.is_exact()) return 2.0 * p0 - 1.0;

    Rng rng(measurement.seed);
    long zeros = 0;
    for (long s = 0; s < measurement.shots; ++s)
        if (bernoulli(rng, p0)) ++zeros;
    return 2.0 * double(zeros) / double(measurement.shots) - 1.0;
}

}  // namespace rabiforge
