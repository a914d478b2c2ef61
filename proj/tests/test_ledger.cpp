// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <thread>

#include "rabiforge/ledger.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/vqs.hpp"

using namespace rabiforge;

TEST_CASE("depth of the empty circuit is zero") {
    const DepthReport d = depth(Circuit(2));
    CHECK(d.total_depth == 0);
    CHECK(d.two_qubit_depth == 0);
}

TEST_CASE("parallel rotations then a CNOT layer") {
    Circuit c(2);
    c.append(Gate::rx(0, 0.1));
    c.append(Gate::rx(1, 0.2));
    c.append(Gate::cnot(0, 1));
    const DepthReport d = depth(c);
    CHECK(d.total_depth == 2);
    CHECK(d.two_qubit_depth == 1);
    CHECK(d.count(GateKind::CNOT) == 1);
    CHECK(d.count(GateKind::RX) == 2);
}

TEST_CASE("two-qubit depth ignores interleaved single-qubit gates") {
    Circuit c(2);
    c.append(Gate::cnot(0, 1));
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    const DepthReport d = depth(c);
    CHECK(d.total_depth == 3);
    CHECK(d.two_qubit_depth == 2);
}

TEST_CASE("PauliExp gates are counted in lowered form") {
    Circuit c(2);
    c.append(Gate::pauli_exp({Pauli::X, Pauli::X}, 0.3));
    const DepthReport d = depth(c);
    // H H | CNOT RZ CNOT | H H -> total 5, one CNOT pair
    CHECK(d.total_depth == 5);
    CHECK(d.two_qubit_depth == 2);
}

TEST_CASE("two-qubit depth never exceeds total depth") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> qubit(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c(3);
        for (int g = 0; g < 25; ++g) {
            const int q = qubit(rng);
            if (rng() % 3 == 0) {
                int t = qubit(rng);
                while (t == q) t = qubit(rng);
                c.append(Gate::cnot(q, t));
            } else {
                c.append(Gate::ry(q, 0.2));
            }
        }
        const DepthReport d = depth(c);
        CHECK(d.two_qubit_depth <= d.total_depth);
    }
}

TEST_CASE("predict_evals reproduces the reference table") {
    CHECK(predict_evals(Method::Trotter, 1000, 7) == 7000);
    CHECK(predict_evals(Method::ISL, 1000, 7, 0, 5.5, 919) == 5061500);
    CHECK(predict_evals(Method::VQS, 1000, 7, 18) == 304000);
    // 7000 + 500*18*19 + 18*7*1000
    CHECK(predict_evals(Method::VQS, 1000, 7, 18) ==
          7000 + 500 * 18 * 19 + 18 * 7 * 1000);
    CHECK_THROWS_AS(predict_evals(Method::VQS, -1, 7, 18), std::invalid_argument);
}

TEST_CASE("record accumulates") {
    EvalCounts counts;
    counts.record(EvalCategory::Observables, 5);
    CHECK(counts.total() == 5);
    counts.record(EvalCategory::CostProbes, 2);
    counts.record(EvalCategory::MatrixElements, 3);
    CHECK(counts.total() == 10);
    CHECK(counts.observables() == 5);
    CHECK(counts.cost_probes() == 2);
    CHECK(counts.matrix_elements() == 3);
}

TEST_CASE("record is safe under concurrent increments") {
    EvalCounts counts;
    std::thread a([&] { for (int i = 0; i < 3000; ++i) counts.record(EvalCategory::Observables, 1); });
    std::thread b([&] { for (int i = 0; i < 4000; ++i) counts.record(EvalCategory::Observables, 1); });
    a.join();
    b.join();
    CHECK(counts.observables() == 7000);
}

TEST_CASE("ledger rows snapshot the counters") {
    EvalCounts counts;
    counts.record(EvalCategory::Observables, 4);
    counts.record(EvalCategory::MatrixElements, 6);
    EvalLedger ledger;
    DepthReport d;
    d.total_depth = 9;
    d.two_qubit_depth = 2;
    ledger.add(3, "vqs", counts, d);
    REQUIRE(ledger.rows.size() == 1);
    CHECK(ledger.rows[0].step == 3);
    CHECK(ledger.rows[0].total == 10);
    CHECK(ledger.rows[0].total_depth == 9);
}

TEST_CASE("a shot-mode VQS step charges exactly the predicted evaluations") {
    // JCM: 4 Pauli terms + identity batch = 5 effective observable groups,
    // 12 parameters; one full step must match the closed-form count.
    ModelSpec spec;
    VqsConfig config;
    const VqsResult r = evolve_vqs(spec, config, 0.01, 0.02, Measurement::with_shots(200, 7));
    REQUIRE(r.ledger.rows.size() >= 2);
    CHECK(r.ledger.rows[0].total == predict_evals(Method::VQS, 200, 5, 12));
    CHECK(r.ledger.rows[1].total == predict_evals(Method::VQS, 200, 5, 12));
}
