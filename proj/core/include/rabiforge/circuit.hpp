// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rabiforge/pauli.hpp"

namespace rabiforge {

enum class GateKind : std::uint8_t {
    RX,
    RY,
    RZ,
    X,
    H,
    S,
    CNOT,
    ControlledPauli,  // Pauli string on the register, applied when the control is |1>
    PauliExp,         // exp(-i * angle * P / 2) for a Pauli string P
};

/// One gate. `qubits` holds the explicit operands: {q} for single-qubit
/// kinds, {control, target} for CNOT, {control} for ControlledPauli. The
/// Pauli-string kinds carry a full-register `pauli` payload and act on its
/// support. A gate with slot >= 0 reads its angle from the parameter vector
/// at bind time.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    double angle = 0.0;
    int slot = -1;
    std::vector<Pauli> pauli;

    static Gate rx(int q, double angle);
    static Gate ry(int q, double angle);
    static Gate rz(int q, double angle);
    static Gate rotation(Pauli axis, int q, double angle);
    static Gate rx_slot(int q, int slot);
    static Gate ry_slot(int q, int slot);
    static Gate rz_slot(int q, int slot);
    static Gate x(int q);
    static Gate h(int q);
    static Gate s(int q);
    static Gate cnot(int control, int target);
    static Gate controlled_pauli(int control, std::vector<Pauli> payload);
    static Gate pauli_exp(std::vector<Pauli> generator, double angle);

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
    }
    bool has_angle() const { return is_rotation() || kind == GateKind::PauliExp; }
    /// Rotation axis of an RX/RY/RZ gate.
    Pauli rotation_axis() const;
    /// Every qubit the gate acts or depends on (support of Pauli payloads
    /// included). Used for layering and peephole adjacency.
    std::vector<int> touched() const;
};

/// Ordered gate list over a fixed register. Parameter slots must be compact:
/// n_parameters() is max slot + 1.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    int n_parameters() const;
    void append(Gate g) { gates.push_back(std::move(g)); }
    void append(const Circuit& other);

    /// Throws std::invalid_argument on out-of-range or duplicate operands,
    /// payload size mismatch, or a rotation slot on a non-angle gate.
    void validate() const;

    /// Resolve slots against a parameter vector; result has no slots.
    Circuit bound(const std::vector<double>& params) const;

    /// Adjoint as a gate list: reversed order, rotation/PauliExp angles
    /// negated, self-inverse gates unchanged. S becomes RZ(-pi/2), which is
    /// its inverse up to global phase. Requires a fully bound circuit.
    Circuit inverted() const;

    /// Rewrites every PauliExp into basis changes + CNOT ladder + RZ. This
    /// is the primitive form the depth metrics count.
    Circuit lowered() const;
};

}  // namespace rabiforge
