// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rabiforge/circuit.hpp"

using namespace rabiforge;

TEST_CASE("gate constructors reject malformed operands") {
    CHECK_THROWS_AS(Gate::cnot(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Gate::controlled_pauli(0, {Pauli::X, Pauli::I}), std::invalid_argument);
    CHECK_THROWS_AS(Gate::rotation(Pauli::I, 0, 0.1), std::invalid_argument);
}

TEST_CASE("validate catches out-of-range operands and payload sizes") {
    Circuit c(2);
    c.append(Gate::x(2));
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    Circuit payload(2);
    payload.append(Gate::pauli_exp({Pauli::X}, 0.1));
    CHECK_THROWS_AS(payload.validate(), std::invalid_argument);

    Circuit fine(2);
    fine.append(Gate::cnot(0, 1));
    fine.append(Gate::pauli_exp({Pauli::X, Pauli::Y}, 0.1));
    CHECK_NOTHROW(fine.validate());
}

TEST_CASE("n_parameters counts distinct slots") {
    Circuit c(2);
    CHECK(c.n_parameters() == 0);
    c.append(Gate::rx_slot(0, 0));
    c.append(Gate::ry_slot(1, 2));
    CHECK(c.n_parameters() == 3);
}

TEST_CASE("bound resolves slots to literal angles") {
    Circuit c(1);
    c.append(Gate::rx_slot(0, 0));
    c.append(Gate::rz(0, 0.5));
    const Circuit b = c.bound({0.7});
    CHECK(b.n_parameters() == 0);
    CHECK(b.gates[0].angle == doctest::Approx(0.7));
    CHECK(b.gates[1].angle == doctest::Approx(0.5));
    CHECK_THROWS_AS(c.bound({}), std::invalid_argument);
    CHECK_THROWS_AS(c.inverted(), std::invalid_argument);
}

TEST_CASE("inversion is the adjoint up to global phase") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = oracles::random_circuit(2, 15, rng);
        const Eigen::MatrixXcd u = oracles::circuit_matrix(c);
        const Eigen::MatrixXcd v = oracles::circuit_matrix(c.inverted());
        const Eigen::MatrixXcd product = v * u;
        // proportional to the identity with |phase| = 1
        const cx phase = product(0, 0);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
        CHECK((product - phase * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("lowering a PauliExp yields basis changes around a CNOT ladder") {
    Circuit c(3);
    c.append(Gate::pauli_exp({Pauli::X, Pauli::Y, Pauli::Z}, 0.4));
    const Circuit low = c.lowered();
    // H(per X) + RX(per Y) wrappers, 2 CNOT pairs, one RZ in the middle
    int cnots = 0, rzs = 0;
    for (const Gate& g : low.gates) {
        cnots += g.kind == GateKind::CNOT;
        rzs += g.kind == GateKind::RZ;
    }
    CHECK(cnots == 4);
    CHECK(rzs == 1);
    CHECK(low.gates.front().kind == GateKind::H);

    // identity generators lower to nothing
    Circuit trivial(2);
    trivial.append(Gate::pauli_exp({Pauli::I, Pauli::I}, 0.9));
    CHECK(trivial.lowered().gates.empty());
}

TEST_CASE("lowering preserves parameter slots on the central rotation") {
    Circuit c(2);
    Gate g = Gate::pauli_exp({Pauli::Z, Pauli::Z}, 0.0);
    g.slot = 0;
    c.append(g);
    const Circuit low = c.lowered();
    CHECK(low.n_parameters() == 1);
    int slotted = 0;
    for (const Gate& lowered_gate : low.gates) slotted += lowered_gate.slot >= 0;
    CHECK(slotted == 1);
}

TEST_CASE("touched covers Pauli payload supports") {
    const Gate g = Gate::controlled_pauli(2, {Pauli::X, Pauli::I, Pauli::I});
    const std::vector<int> qs = g.touched();
    REQUIRE(qs.size() == 2);
    CHECK(qs[0] == 0);
    CHECK(qs[1] == 2);
}
