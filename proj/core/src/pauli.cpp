// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rabiforge {

namespace {
constexpr double kMergeTol = 1e-12;
}

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
        default: throw std::invalid_argument(std::string("not a Pauli label: ") + c);
    }
}

PauliTerm::PauliTerm(double coeff, std::vector<Pauli> a)
    : coefficient(coeff), axes(std::move(a)) {
    if (!std::isfinite(coefficient))
        throw std::invalid_argument("Pauli coefficient must be finite");
}

PauliTerm::PauliTerm(double coeff, const std::string& a) : coefficient(coeff) {
    if (!std::isfinite(coefficient))
        throw std::invalid_argument("Pauli coefficient must be finite");
    axes.reserve(a.size());
    for (char c : a) axes.push_back(pauli_from_char(c));
}

bool PauliTerm::is_identity() const {
    return std::all_of(axes.begin(), axes.end(),
                       [](Pauli p) { return p == Pauli::I; });
}

std::string PauliTerm::axes_string() const {
    std::string s;
    s.reserve(axes.size());
    for (Pauli p : axes) s.push_back(pauli_char(p));
    return s;
}

std::string PauliSum::text() const {
    std::string out;
    char buf[64];
    for (const PauliTerm& t : terms_) {
        std::snprintf(buf, sizeof(buf), "%.12g ", t.coefficient);
        out += buf;
        out += t.axes_string();
        out += '\n';
    }
    if (identity_offset_ != 0.0) {
        std::snprintf(buf, sizeof(buf), "%.12g ", identity_offset_);
        out += buf;
        out += std::string(n_qubits_, 'I');
        out += '\n';
    }
    return out;
}

PauliSum canonicalize(const std::vector<PauliTerm>& terms, double offset) {
    std::size_t n = terms.empty() ? 0 : terms.front().n_qubits();
    for (const PauliTerm& t : terms) {
        if (t.n_qubits() != n)
            throw std::invalid_argument("mismatched register sizes in Pauli terms");
    }
    std::vector<PauliTerm> sorted = terms;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const PauliTerm& a, const PauliTerm& b) { return a.axes < b.axes; });

    PauliSum out(n);
    out.identity_offset_ = offset;
    for (const PauliTerm& t : sorted) {
        if (t.is_identity()) {
            out.identity_offset_ += t.coefficient;
            continue;
        }
        if (!out.terms_.empty() && out.terms_.back().axes == t.axes) {
            out.terms_.back().coefficient += t.coefficient;
        } else {
            out.terms_.push_back(t);
        }
    }
    std::erase_if(out.terms_, [](const PauliTerm& t) {
        return std::abs(t.coefficient) < kMergeTol;
    });
    return out;
}

PauliSum canonicalize(const std::vector<PauliTerm>& terms) {
    return canonicalize(terms, 0.0);
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -1i, 1i, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::MatrixXcd dense_pauli_string(const std::vector<Pauli>& axes) {
    // Qubit 0 is the leftmost factor, so each subsequent qubit nests inside:
    // acc <- kron(acc, sigma_q).
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (Pauli p : axes) {
        const Eigen::Matrix2cd f = pauli_matrix(p);
        Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < acc.cols(); ++j)
                next.block<2, 2>(i * 2, j * 2) = acc(i, j) * f;
        acc = std::move(next);
    }
    return acc;
}

Eigen::MatrixXcd matrix_of(const PauliSum& sum, std::size_t n_qubits) {
    if (n_qubits > kDenseQubitCap)
        throw std::length_error("dense matrix request exceeds the qubit cap");
    if (sum.n_qubits() != 0 && sum.n_qubits() != n_qubits)
        throw std::invalid_argument("PauliSum register size does not match n_qubits");
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const PauliTerm& t : sum.terms())
        h += t.coefficient * dense_pauli_string(t.axes);
    h += sum.identity_offset() * Eigen::MatrixXcd::Identity(dim, dim);
    return h;
}

}  // namespace rabiforge
