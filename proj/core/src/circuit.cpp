// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rabiforge {

Gate Gate::rx(int q, double angle) { return Gate{GateKind::RX, {q}, angle, -1, {}}; }
Gate Gate::ry(int q, double angle) { return Gate{GateKind::RY, {q}, angle, -1, {}}; }
Gate Gate::rz(int q, double angle) { return Gate{GateKind::RZ, {q}, angle, -1, {}}; }

Gate Gate::rotation(Pauli axis, int q, double angle) {
    switch (axis) {
        case Pauli::X: return rx(q, angle);
        case Pauli::Y: return ry(q, angle);
        case Pauli::Z: return rz(q, angle);
        default: throw std::invalid_argument("rotation axis must be X, Y or Z");
    }
}

Gate Gate::rx_slot(int q, int slot) { return Gate{GateKind::RX, {q}, 0.0, slot, {}}; }
Gate Gate::ry_slot(int q, int slot) { return Gate{GateKind::RY, {q}, 0.0, slot, {}}; }
Gate Gate::rz_slot(int q, int slot) { return Gate{GateKind::RZ, {q}, 0.0, slot, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::X, {q}, 0.0, -1, {}}; }
Gate Gate::h(int q) { return Gate{GateKind::H, {q}, 0.0, -1, {}}; }
Gate Gate::s(int q) { return Gate{GateKind::S, {q}, 0.0, -1, {}}; }

Gate Gate::cnot(int control, int target) {
    if (control == target)
        throw std::invalid_argument("CNOT control and target must differ");
    return Gate{GateKind::CNOT, {control, target}, 0.0, -1, {}};
}

Gate Gate::controlled_pauli(int control, std::vector<Pauli> payload) {
    if (control < int(payload.size()) && payload[control] != Pauli::I)
        throw std::invalid_argument("controlled-Pauli payload must be identity on the control");
    return Gate{GateKind::ControlledPauli, {control}, 0.0, -1, std::move(payload)};
}

Gate Gate::pauli_exp(std::vector<Pauli> generator, double angle) {
    return Gate{GateKind::PauliExp, {}, angle, -1, std::move(generator)};
}

Pauli Gate::rotation_axis() const {
    switch (kind) {
        case GateKind::RX: return Pauli::X;
        case GateKind::RY: return Pauli::Y;
        case GateKind::RZ: return Pauli::Z;
        default: throw std::logic_error("gate has no rotation axis");
    }
}

std::vector<int> Gate::touched() const {
    std::vector<int> qs = qubits;
    for (std::size_t q = 0; q < pauli.size(); ++q)
        if (pauli[q] != Pauli::I) qs.push_back(int(q));
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

int Circuit::n_parameters() const {
    int max_slot = -1;
    for (const Gate& g : gates) max_slot = std::max(max_slot, g.slot);
    return max_slot + 1;
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits != n_qubits)
        throw std::invalid_argument("cannot append circuit on a different register");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::validate() const {
    for (const Gate& g : gates) {
        for (int q : g.qubits)
            if (q < 0 || q >= n_qubits)
                throw std::invalid_argument("gate qubit index out of range");
        if (g.kind == GateKind::CNOT && g.qubits.size() != 2)
            throw std::invalid_argument("CNOT takes exactly (control, target)");
        if (g.is_rotation() && g.qubits.size() != 1)
            throw std::invalid_argument("rotation gates act on exactly one qubit");
        if (!g.pauli.empty() && int(g.pauli.size()) != n_qubits)
            throw std::invalid_argument("Pauli payload length must equal the register size");
        if (g.slot >= 0 && !g.has_angle())
            throw std::invalid_argument("parameter slot on a non-rotation gate");
        std::vector<int> qs = g.qubits;
        std::sort(qs.begin(), qs.end());
        if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
            throw std::invalid_argument("gate operands must be distinct");
    }
}

Circuit Circuit::bound(const std::vector<double>& params) const {
    if (int(params.size()) != n_parameters())
        throw std::invalid_argument("parameter count mismatch while binding circuit");
    Circuit out(n_qubits);
    out.gates.reserve(gates.size());
    for (Gate g : gates) {
        if (g.slot >= 0) {
            g.angle = params[size_t(g.slot)];
            g.slot = -1;
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

Circuit Circuit::inverted() const {
    if (n_parameters() > 0)
        throw std::invalid_argument("cannot invert a circuit with unbound parameters");
    Circuit out(n_qubits);
    out.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        Gate g = *it;
        if (g.has_angle()) {
            g.angle = -g.angle;
        } else if (g.kind == GateKind::S) {
            g = Gate::rz(g.qubits[0], -std::numbers::pi / 2);
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

Circuit Circuit::lowered() const {
    Circuit out(n_qubits);
    for (const Gate& g : gates) {
        if (g.kind != GateKind::PauliExp) {
            out.gates.push_back(g);
            continue;
        }
        std::vector<int> support;
        for (std::size_t q = 0; q < g.pauli.size(); ++q)
            if (g.pauli[q] != Pauli::I) support.push_back(int(q));
        if (support.empty()) continue;  // identity generator: global phase only

        const double half_pi = std::numbers::pi / 2;
        for (int q : support) {
            if (g.pauli[size_t(q)] == Pauli::X) out.append(Gate::h(q));
            else if (g.pauli[size_t(q)] == Pauli::Y) out.append(Gate::rx(q, half_pi));
        }
        for (std::size_t i = 0; i + 1 < support.size(); ++i)
            out.append(Gate::cnot(support[i], support[i + 1]));
        Gate rz = Gate::rz(support.back(), g.angle);
        rz.slot = g.slot;
        out.append(rz);
        for (std::size_t i = support.size() - 1; i-- > 0;)
            out.append(Gate::cnot(support[i], support[i + 1]));
        for (int q : support) {
            if (g.pauli[size_t(q)] == Pauli::X) out.append(Gate::h(q));
            else if (g.pauli[size_t(q)] == Pauli::Y) out.append(Gate::rx(q, -half_pi));
        }
    }
    return out;
}

}  // namespace rabiforge
