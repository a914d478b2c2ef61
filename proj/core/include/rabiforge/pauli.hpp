// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rabiforge {

/// Single-qubit Pauli operator label. Also used as the rotation axis of
/// parameterised gates (I is not a valid rotation axis).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// One weighted tensor product of single-qubit Paulis. axes[q] is the factor
/// on qubit q; qubit 0 is the leftmost tensor factor and maps to the most
/// significant bit of the basis-state index.
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<Pauli> axes;

    PauliTerm() = default;
    PauliTerm(double coeff, std::vector<Pauli> a);
    /// Convenience: axes given as a string over "IXYZ", e.g. {5.0, "XX"}.
    PauliTerm(double coeff, const std::string& a);

    std::size_t n_qubits() const { return axes.size(); }
    bool is_identity() const;
    std::string axes_string() const;
};

/// Canonical weighted sum of Pauli strings. Terms are merged, sorted and
/// non-identity; the all-identity weight lives in identity_offset. This is
/// the Hamiltonian/observable representation shared by every engine.
class PauliSum {
  public:
    explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    std::size_t n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    double identity_offset() const { return identity_offset_; }

    /// Renders one "coeff axes" line per term, identity offset last if
    /// nonzero (used by the CLI --dump-hamiltonian output).
    std::string text() const;

    friend PauliSum canonicalize(const std::vector<PauliTerm>& terms);
    friend PauliSum canonicalize(const std::vector<PauliTerm>& terms, double offset);

  private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
    double identity_offset_ = 0.0;
};

/// Merge duplicate axes, drop cancelled terms (|coeff| < 1e-12 after
/// merging) and move all-identity weight into the offset. Terms end up in a
/// deterministic lexicographic order (I < X < Y < Z per qubit).
PauliSum canonicalize(const std::vector<PauliTerm>& terms);
PauliSum canonicalize(const std::vector<PauliTerm>& terms, double offset);

/// Largest register the dense helpers will materialise (2^12 x 2^12).
inline constexpr std::size_t kDenseQubitCap = 12;

/// The 2x2 matrix of a single Pauli label.
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// Dense Hermitian matrix of one Pauli string (no coefficient).
Eigen::MatrixXcd dense_pauli_string(const std::vector<Pauli>& axes);

/// Dense Hermitian matrix of the full sum, identity offset included.
Eigen::MatrixXcd matrix_of(const PauliSum& sum, std::size_t n_qubits);

}  // namespace rabiforge
