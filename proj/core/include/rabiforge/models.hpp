// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rabiforge/pauli.hpp"
#include "rabiforge/statevector.hpp"

namespace rabiforge {

enum class ModelKind { JCM, TCM, DetunedJCM };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

/// Parameters of the qubit-encoded cavity models. Qubit 0 carries the field
/// mode (single-qubit truncated boson), qubits 1..n_atoms the atoms.
struct ModelSpec {
    ModelKind kind = ModelKind::JCM;
    int n_atoms = 1;
    double spin = 0.5;        // boson-register spin S of the truncated transform
    double omega = 2.0;       // field frequency (omega_c for the detuned model)
    double omega_atom = 2.0;  // atom frequency, DetunedJCM only
    double coupling = 10.0;   // Omega
    bool tcm_positive_coupling = false;  // flips the TCM interaction sign

    int n_qubits() const { return n_atoms + 1; }
    double atom_frequency() const {
        return kind == ModelKind::DetunedJCM ? omega_atom : omega;
    }
    void validate() const;
};

/// The three plotted energies. Offsets are chosen so atom and field each read
/// zero in the configuration the initial state leaves behind after a full
/// excitation transfer; system = atom + field + interaction term by term.
struct ObservableSet {
    PauliSum system;
    PauliSum atom;
    PauliSum field;

    ObservableSet() : system(0), atom(0), field(0) {}
};

struct EncodedModel {
    PauliSum hamiltonian;
    ObservableSet observables;

    EncodedModel() : hamiltonian(0) {}
};

/// Qubit Hamiltonian and observables via the truncated Holstein-Primakoff
/// transform. The exchange coupling enters with weight Omega/(4*sqrt(2S)) so
/// that the resonant single-excitation gap is exactly Omega and the initial
/// configuration revives with probability cos^2(sqrt(n) Omega t / 2).
EncodedModel encode(const ModelSpec& spec);

/// Field qubit |0>, every atom qubit |1>.
StateVector initial_state(const ModelSpec& spec);

/// cos^2(sqrt(n) Omega t / 2) with n = n_atoms quanta. Resonant models only.
double analytic_population(const ModelSpec& spec, double t);

/// Per-row energy readout used by every engine. In shot mode the
/// Hamiltonian's terms are sampled once (plus one batch for the tracked
/// identity component) and the atom/field energies are assembled from the
/// same term estimates.
struct EnergyReadout {
    double system = 0.0;
    double atom = 0.0;
    double field = 0.0;
    long batches = 0;
};
EnergyReadout measure_energies(const StateVector& state, const EncodedModel& model,
                               const Measurement& measurement);

}  // namespace rabiforge
