// SPDX-License-Identifier: Apache-2.0
//
// Test-side reference implementations, kept independent of the library code
// paths they are used to check: dense gate/circuit matrices are assembled by
// index arithmetic rather than the simulator's in-place updates, the partial
// trace works on the full density matrix, and the concurrence uses the
// rho * rho~ eigenvalue route instead of the sqrt(rho) sandwich.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rabiforge/circuit.hpp"
#include "rabiforge/pauli.hpp"
#include "rabiforge/statevector.hpp"

namespace oracles {

using rabiforge::Circuit;
using rabiforge::Gate;
using rabiforge::GateKind;
using rabiforge::Pauli;
using rabiforge::StateVector;
using cx = std::complex<double>;

inline Eigen::Matrix2cd u2(GateKind kind, double angle) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    switch (kind) {
        case GateKind::RX: m << c, -1i * s, -1i * s, c; break;
        case GateKind::RY: m << c, -s, s, c; break;
        case GateKind::RZ: m << std::exp(-0.5i * angle), 0, 0, std::exp(0.5i * angle); break;
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::H: m << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0),
                              -1 / std::sqrt(2.0); break;
        case GateKind::S: m << 1, 0, 0, 1i; break;
        default: throw std::logic_error("not a single-qubit kind");
    }
    return m;
}

inline int bit_of(std::size_t b, int q, int n) { return int((b >> (n - 1 - q)) & 1u); }

/// Dense unitary of one gate over the n-qubit register, built element-wise.
inline Eigen::MatrixXcd gate_matrix(const Gate& gate, int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    using namespace std::complex_literals;

    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::X:
        case GateKind::H:
        case GateKind::S: {
            const Eigen::Matrix2cd g = u2(gate.kind, gate.angle);
            const int q = gate.qubits[0];
            for (Eigen::Index col = 0; col < dim; ++col) {
                const int bit = bit_of(size_t(col), q, n);
                const Eigen::Index flipped = col ^ (Eigen::Index(1) << (n - 1 - q));
                u(col, col) += g(bit, bit);
                u(flipped, col) += g(1 - bit, bit);
            }
            return u;
        }
        case GateKind::CNOT: {
            for (Eigen::Index col = 0; col < dim; ++col) {
                if (bit_of(size_t(col), gate.qubits[0], n))
                    u(col ^ (Eigen::Index(1) << (n - 1 - gate.qubits[1])), col) = 1.0;
                else
                    u(col, col) = 1.0;
            }
            return u;
        }
        case GateKind::ControlledPauli: {
            const Eigen::MatrixXcd p = rabiforge::dense_pauli_string(gate.pauli);
            for (Eigen::Index col = 0; col < dim; ++col) {
                if (bit_of(size_t(col), gate.qubits[0], n)) {
                    for (Eigen::Index row = 0; row < dim; ++row) u(row, col) = p(row, col);
                } else {
                    u(col, col) = 1.0;
                }
            }
            return u;
        }
        case GateKind::PauliExp: {
            const Eigen::MatrixXcd p = rabiforge::dense_pauli_string(gate.pauli);
            const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
            return std::cos(gate.angle / 2) * id - 1i * std::sin(gate.angle / 2) * p;
        }
    }
    throw std::logic_error("unhandled kind");
}

/// Dense unitary of a bound circuit (product of gate matrices).
inline Eigen::MatrixXcd circuit_matrix(const Circuit& circuit) {
    const Eigen::Index dim = Eigen::Index(1) << circuit.n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Gate& g : circuit.gates) u = gate_matrix(g, circuit.n_qubits) * u;
    return u;
}

inline Eigen::VectorXcd to_vector(const StateVector& s) {
    Eigen::VectorXcd v(Eigen::Index(s.dim()));
    for (std::size_t b = 0; b < s.dim(); ++b) v(Eigen::Index(b)) = s.amp[b];
    return v;
}

/// Partial trace onto (qa, qb) from the full density matrix psi psi^dagger.
inline Eigen::Matrix4cd brute_partial_trace(const StateVector& s, int qa, int qb) {
    const int n = s.n_qubits;
    const Eigen::VectorXcd psi = to_vector(s);
    const Eigen::MatrixXcd full = psi * psi.adjoint();
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (Eigen::Index i = 0; i < full.rows(); ++i) {
        for (Eigen::Index j = 0; j < full.cols(); ++j) {
            bool same_env = true;
            for (int q = 0; q < n && same_env; ++q)
                if (q != qa && q != qb)
                    same_env = bit_of(size_t(i), q, n) == bit_of(size_t(j), q, n);
            if (!same_env) continue;
            const int r = 2 * bit_of(size_t(i), qa, n) + bit_of(size_t(i), qb, n);
            const int c = 2 * bit_of(size_t(j), qa, n) + bit_of(size_t(j), qb, n);
            rho(r, c) += full(i, j);
        }
    }
    return rho;
}

/// Wootters concurrence via the eigenvalues of rho * rho~ (no matrix square
/// roots): lambda_i = sqrt(eig_i), C = max{0, l1 - l2 - l3 - l4}.
inline double brute_concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Eigen::Matrix4cd product = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product);
    std::vector<double> lambdas;
    for (int i = 0; i < 4; ++i)
        lambdas.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i).real())));
    std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

inline StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s;
    s.n_qubits = n;
    s.amp.resize(std::size_t(1) << n);
    double norm = 0.0;
    for (cx& a : s.amp) {
        a = cx(gauss(rng), gauss(rng));
        norm += std::norm(a);
    }
    for (cx& a : s.amp) a /= std::sqrt(norm);
    return s;
}

/// Random circuit over rotations, H, X, S and CNOT.
inline Circuit random_circuit(int n, int n_gates, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 6);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    Circuit c(n);
    for (int g = 0; g < n_gates; ++g) {
        const int k = kind(rng);
        const int q = qubit(rng);
        switch (k) {
            case 0: c.append(Gate::rx(q, angle(rng))); break;
            case 1: c.append(Gate::ry(q, angle(rng))); break;
            case 2: c.append(Gate::rz(q, angle(rng))); break;
            case 3: c.append(Gate::h(q)); break;
            case 4: c.append(Gate::x(q)); break;
            case 5: c.append(Gate::s(q)); break;
            default: {
                if (n < 2) { c.append(Gate::x(q)); break; }
                int t = qubit(rng);
                while (t == q) t = qubit(rng);
                c.append(Gate::cnot(q, t));
                break;
            }
        }
    }
    return c;
}

/// Fidelity |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
    cx acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.amp.size(); ++k) acc += std::conj(a.amp[k]) * b.amp[k];
    return std::norm(acc);
}

}  // namespace oracles
