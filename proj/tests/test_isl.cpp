// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rabiforge/isl.hpp"
#include "rabiforge/trotter.hpp"

using namespace rabiforge;

TEST_CASE("cost of an exactly inverted target is zero") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit target = oracles::random_circuit(2, 12, rng);
        const Circuit body = target.inverted();
        CHECK(isl_cost(target, body, Measurement::exact()) < 1e-12);
    }
}

TEST_CASE("cost of an empty ansatz against an X target is one") {
    Circuit target(2);
    target.append(Gate::x(0));
    CHECK(isl_cost(target, Circuit(2), Measurement::exact()) == doctest::Approx(1.0));
}

TEST_CASE("cost of an empty ansatz against RX(theta) is sin^2(theta/2)") {
    for (double theta : {0.1, 0.7, 1.9, 3.0}) {
        Circuit target(2);
        target.append(Gate::rx(0, theta));
        CHECK(isl_cost(target, Circuit(2), Measurement::exact()) ==
              doctest::Approx(std::pow(std::sin(theta / 2.0), 2)).epsilon(1e-12));
    }
}

TEST_CASE("cost is invariant under a global phase of the target") {
    std::mt19937_64 rng(72);
    const Circuit target = oracles::random_circuit(2, 10, rng);
    Circuit phased = target;
    // RZ(2pi) = -I: a pure global phase
    phased.append(Gate::rz(0, 2.0 * std::numbers::pi));
    const Circuit body = oracles::random_circuit(2, 6, rng);
    CHECK(isl_cost(target, body, Measurement::exact()) ==
          doctest::Approx(isl_cost(phased, body, Measurement::exact())).epsilon(1e-12));
}

TEST_CASE("optimize_block nails a single-rotation target in one cycle") {
    Circuit target(2);
    target.append(Gate::rx(0, 0.7));
    const StateVector prepared = run(target, StateVector::zero_state(2));
    CostEvaluator evaluate(prepared, Measurement::exact(), 10000);
    Circuit body(2);
    const BlockHandle handle = append_block(body, 0, 1);
    IslConfig config;
    const double cost = optimize_block(body, handle, evaluate, config);
    CHECK(cost < 1e-10);
}

TEST_CASE("optimize_block on an identity target terminates after one cycle") {
    const StateVector prepared = StateVector::zero_state(2);
    CostEvaluator evaluate(prepared, Measurement::exact(), 10000);
    Circuit body(2);
    const BlockHandle handle = append_block(body, 0, 1);
    IslConfig config;
    const double cost = optimize_block(body, handle, evaluate, config);
    CHECK(cost < 1e-12);
    // 1 initial + one cycle of 4 rotations x (3 axes x 3 probes + 1)
    CHECK(evaluate.evaluations() <= 1 + 4 * 10);
}

TEST_CASE("three probes reconstruct the exactly sinusoidal cost") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        const Circuit target = oracles::random_circuit(2, 10, rng);
        const StateVector prepared = run(target, StateVector::zero_state(2));
        Circuit body(2);
        const BlockHandle handle = append_block(body, 0, 1);
        // randomise the other three rotations
        for (int r = 1; r < 4; ++r) {
            Gate& g = body.gates[handle.rotation_gates[r]];
            g = Gate::rotation(Pauli(1 + rng() % 3), g.qubits[0],
                               -2.0 + 4.0 * double(rng() % 1000) / 1000.0);
        }
        Gate& probe = body.gates[handle.rotation_gates[0]];
        const int q = probe.qubits[0];
        probe = Gate::ry(q, 0.0);
        CostEvaluator evaluate(prepared, Measurement::exact(), 1000000);
        const double c0 = evaluate(body);
        probe.angle = std::numbers::pi / 2;
        const double cq = evaluate(body);
        probe.angle = std::numbers::pi;
        const double cpi = evaluate(body);
        const double a = (c0 + cpi) / 2, b = (c0 - cpi) / 2, s = cq - a;
        for (int k = 0; k < 100; ++k) {
            const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * k / 100.0;
            probe.angle = theta;
            const double measured = evaluate(body);
            const double fitted = a + b * std::cos(theta) + s * std::sin(theta);
            CHECK(std::abs(measured - fitted) < 1e-10);
        }
    }
}

TEST_CASE("global_optimize reaches the closed-form optimum of one angle") {
    Circuit target(2);
    target.append(Gate::rx(0, 0.7));
    const StateVector prepared = run(target, StateVector::zero_state(2));
    CostEvaluator evaluate(prepared, Measurement::exact(), 100000);
    Circuit body(2);
    body.append(Gate::rx(0, 0.0));
    IslConfig config;
    const double cost = global_optimize(body, evaluate, config);
    CHECK(cost < 1e-6);  // closed-form optimum is exactly 0 at angle -0.7
}

TEST_CASE("global_optimize never worsens an already optimal point") {
    Circuit target(2);
    target.append(Gate::rx(0, 0.4));
    const StateVector prepared = run(target, StateVector::zero_state(2));
    CostEvaluator evaluate(prepared, Measurement::exact(), 100000);
    Circuit body(2);
    body.append(Gate::rx(0, -0.4));
    IslConfig config;
    CHECK(global_optimize(body, evaluate, config) < 1e-12);
}

TEST_CASE("simplify merges same-axis rotations") {
    Circuit c(2);
    c.append(Gate::rz(0, 0.3));
    c.append(Gate::rz(0, 0.4));
    const Circuit out = simplify(c);
    REQUIRE(out.gates.size() == 1);
    CHECK(out.gates[0].angle == doctest::Approx(0.7));
}

TEST_CASE("simplify cancels adjacent identical CNOT pairs") {
    Circuit c(2);
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(0, 1));
    CHECK(simplify(c).gates.empty());

    // an intervening gate on either wire blocks the cancellation
    Circuit blocked(2);
    blocked.append(Gate::cnot(0, 1));
    blocked.append(Gate::rx(1, 0.2));
    blocked.append(Gate::cnot(0, 1));
    CHECK(simplify(blocked).gates.size() == 3);
}

TEST_CASE("simplify collapses the zero-angle two-layer ansatz body to nothing") {
    // the VQS ansatz body at theta = 0: rotations at zero, mirrored
    // entanglers; after dropping the rotations the CNOTs cancel pairwise
    for (int n : {2, 3}) {
        Circuit body(n);
        std::vector<std::pair<int, int>> pattern;
        for (int c = n - 1; c >= 1; --c)
            for (int t = c - 1; t >= 0; --t) pattern.push_back({c, t});
        for (int layer = 0; layer < 2; ++layer) {
            for (int q = 0; q < n; ++q) {
                body.append(Gate::rx(q, 0.0));
                body.append(Gate::ry(q, 0.0));
                body.append(Gate::rz(q, 0.0));
            }
            if (layer % 2 == 0)
                for (auto& [c, t] : pattern) body.append(Gate::cnot(c, t));
            else
                for (auto it = pattern.rbegin(); it != pattern.rend(); ++it)
                    body.append(Gate::cnot(it->first, it->second));
        }
        CHECK(simplify(body).gates.empty());
    }
}

TEST_CASE("simplify preserves the action on the vacuum to 1e-10") {
    std::mt19937_64 rng(74);
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = oracles::random_circuit(3, 30, rng);
        const StateVector a = run(c, StateVector::zero_state(3));
        const StateVector b = run(simplify(c), StateVector::zero_state(3));
        CHECK(oracles::fidelity(a, b) > 1.0 - 1e-10);
    }
}

TEST_CASE("simplify preserves the unitary up to global phase") {
    std::mt19937_64 rng(75);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = oracles::random_circuit(2, 20, rng);
        const Eigen::MatrixXcd u = oracles::circuit_matrix(c);
        const Eigen::MatrixXcd v = oracles::circuit_matrix(simplify(c));
        // align phases via the largest element
        Eigen::Index row, col;
        u.cwiseAbs().maxCoeff(&row, &col);
        const cx phase = u(row, col) / v(row, col);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
        CHECK((u - phase * v).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("evolve_isl compiles every JCM step below tolerance") {
    ModelSpec spec;
    IslConfig config;
    const IslResult r = evolve_isl(spec, 0.01, 0.15, config, Measurement::exact());
    REQUIRE(r.steps.size() == 15);
    for (const IslStepRecord& s : r.steps) {
        CHECK(s.converged);
        CHECK(s.final_cost < config.tolerance);
    }
    // trajectory rows carry the per-step cost and flag columns
    CHECK(r.trajectory.extra_name == "isl_cost");
    CHECK(r.trajectory.has_flag_column);
}

TEST_CASE("TCM block count per step is comparable to the reference average") {
    ModelSpec spec;
    spec.kind = ModelKind::TCM;
    spec.n_atoms = 2;
    IslConfig config;
    const double t_max = 4.0 * std::numbers::pi / (std::sqrt(2.0) * spec.coupling);
    const IslResult r = evolve_isl(spec, 0.01, t_max, config, Measurement::exact());
    double blocks = 0.0;
    for (const IslStepRecord& s : r.steps) blocks += s.blocks;
    blocks /= double(r.steps.size());
    CHECK(blocks > 5.5 / 2.0);
    CHECK(blocks < 5.5 * 2.0);
}

TEST_CASE("compile tolerance bounds the measured-energy deviation") {
    // cost < tol implies the energies read on the compiled state differ from
    // the target-state energies by at most 2 ||H|| sqrt(tol).
    ModelSpec spec;
    const EncodedModel model = encode(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_of(model.hamiltonian, 2));
    const double h_norm = es.eigenvalues().cwiseAbs().maxCoeff();
    IslConfig config;
    const TrotterPlan plan = build_step(model.hamiltonian, 0.01);

    Circuit base(2);
    base.append(Gate::x(1));
    for (int m = 1; m <= 10; ++m) {
        Circuit target(2);
        target.append(base);
        target.append(plan.step_circuit);
        target = simplify(target);
        const StateVector target_state = run(target, StateVector::zero_state(2));
        CostEvaluator evaluate(target_state, Measurement::exact(), config.optimizer_budget);
        Circuit body(2);
        const BlockHandle handle = append_block(body, 0, 1);
        double cost = optimize_block(body, handle, evaluate, config);
        cost = global_optimize(body, evaluate, config);
        REQUIRE(cost < config.tolerance);
        const Circuit compiled = body.inverted();
        const StateVector compiled_state = run(compiled, StateVector::zero_state(2));
        const double deviation = std::abs(expectation(compiled_state, model.hamiltonian) -
                                          expectation(target_state, model.hamiltonian));
        CHECK(deviation <= 2.0 * h_norm * std::sqrt(config.tolerance));
        base = compiled;
    }
}

TEST_CASE("compiled two-qubit depth stays bounded while Trotter grows") {
    ModelSpec spec;
    IslConfig config;
    const IslResult isl = evolve_isl(spec, 0.01, 0.4, config, Measurement::exact());
    const TrotterResult trot = evolve_trotter(spec, 0.01, 0.4, Measurement::exact());
    const long m = long(isl.depth_rows.size()) - 1;
    CHECK(isl.depth_rows[size_t(m)].two_qubit_depth <
          trot.depth_rows[size_t(m)].two_qubit_depth);
}

TEST_CASE("ansatz dump lists blocks per step") {
    ModelSpec spec;
    IslConfig config;
    const IslResult r = evolve_isl(spec, 0.01, 0.02, config, Measurement::exact());
    const std::string dump = ansatz_dump(r.steps);
    CHECK(dump.find("step 1") != std::string::npos);
    CHECK(dump.find("(0,1):") != std::string::npos);
}
