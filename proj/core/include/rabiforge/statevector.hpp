// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "rabiforge/circuit.hpp"
#include "rabiforge/pauli.hpp"
#include "rabiforge/rng.hpp"

namespace rabiforge {

using cx = std::complex<double>;

/// How expectation-valued quantities are read out: exactly from the state
/// vector, or by drawing a fixed number of shots per measured term from the
/// exact outcome distribution with a mandatory seed.
struct Measurement {
    enum class Mode { Exact, Shots };
    Mode mode = Mode::Exact;
    long shots = 0;
    std::uint64_t seed = 0;

    static Measurement exact() { return {}; }
    static Measurement with_shots(long k, std::uint64_t seed) {
        return {Mode::Shots, k, seed};
    }
    bool is_exact() const { return mode == Mode::Exact; }
    /// Same mode, fresh per-call seed derived from a salt.
    Measurement reseeded(std::uint64_t salt) const {
        Measurement m = *this;
        m.seed = mix_seed(seed, salt);
        return m;
    }
};

/// Normalized amplitudes over the 2^n computational basis states. Qubit 0 is
/// the most significant bit of the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<cx> amp;

    static StateVector zero_state(int n_qubits);
    static StateVector basis_state(int n_qubits, std::size_t index);

    std::size_t dim() const { return amp.size(); }
    double norm2() const;
    /// Bit of qubit q in basis index b.
    static int bit_of(std::size_t b, int q, int n_qubits) {
        return int((b >> (n_qubits - 1 - q)) & 1u);
    }
};

struct DensityMatrix {
    Eigen::MatrixXcd mat;
    int n_kept = 0;
};

/// Apply one (bound) gate in place.
void apply_gate(StateVector& state, const Gate& gate);

/// P|psi> for a full-register Pauli string.
StateVector apply_pauli_string(const StateVector& state, const std::vector<Pauli>& axes);

StateVector run(const Circuit& circuit, const std::vector<double>& params,
                const StateVector& initial);
StateVector run(const Circuit& circuit, const StateVector& initial);

/// <psi|P|psi> for one Pauli string (coefficient excluded).
double term_expectation(const StateVector& state, const std::vector<Pauli>& axes);

/// <psi|obs|psi> + identity offset.
double expectation(const StateVector& state, const PauliSum& obs);

/// Shot-sampled expectation value: for each term in canonical order, draw
/// shots_per_term Bernoulli(+1-probability) outcomes from the exact
/// distribution and average the +-1 eigenvalues; a nonzero identity offset is
/// charged as one extra (deterministic) batch. Deterministic for fixed seed.
double sample_expectation(const StateVector& state, const PauliSum& obs,
                          long shots_per_term, std::uint64_t seed);

/// Per-term <P_k> estimates in term order, identity batch drawn last when the
/// offset is nonzero. Lets the runner assemble several observables from one
/// set of term measurements. batches reports how many shot batches were used.
std::vector<double> sample_term_expectations(const StateVector& state, const PauliSum& obs,
                                             long shots_per_term, std::uint64_t seed,
                                             long* batches = nullptr);

/// |<0..0| circuit |0..0>|^2.
double zero_overlap(const Circuit& circuit, const std::vector<double>& params = {});
double zero_overlap_from(const Circuit& tail, const StateVector& prepared);

/// Partial trace onto qubits (keep_a, keep_b); keep_a indexes the more
/// significant bit of the reduced 4x4 basis.
DensityMatrix reduce(const StateVector& state, int keep_a, int keep_b);

/// Runs an ancilla interferometry circuit (ancilla = last qubit, wired
/// H ... H with controlled insertions) and returns P(ancilla=0)-P(ancilla=1),
/// exact or sampled. imaginary_part only declares which variant the wiring
/// must carry (the S after the leading H).
double hadamard_test(const Circuit& ancilla_circuit, const std::vector<double>& params,
                     bool imaginary_part, const Measurement& measurement);

}  // namespace rabiforge
