// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "rabiforge/models.hpp"
#include "rabiforge/statevector.hpp"
#include "rabiforge/trotter.hpp"

using namespace rabiforge;

namespace {

StateVector haar_like_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
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

void BM_rotation_gate(benchmark::State& state) {
    const int n = int(state.range(0));
    StateVector psi = haar_like_state(n, 1);
    const Gate g = Gate::rx(n / 2, 0.3);
    for (auto _ : state) {
        apply_gate(psi, g);
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_rotation_gate)->DenseRange(2, 10, 2);

void BM_cnot_gate(benchmark::State& state) {
    const int n = int(state.range(0));
    StateVector psi = haar_like_state(n, 2);
    const Gate g = Gate::cnot(0, n - 1);
    for (auto _ : state) {
        apply_gate(psi, g);
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_cnot_gate)->DenseRange(2, 10, 2);

void BM_pauli_exp_gate(benchmark::State& state) {
    const int n = int(state.range(0));
    StateVector psi = haar_like_state(n, 3);
    std::vector<Pauli> axes(size_t(n), Pauli::I);
    axes[0] = Pauli::X;
    axes[size_t(n - 1)] = Pauli::Y;
    const Gate g = Gate::pauli_exp(axes, 0.2);
    for (auto _ : state) {
        apply_gate(psi, g);
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_pauli_exp_gate)->DenseRange(2, 10, 2);

void BM_trotter_step(benchmark::State& state) {
    ModelSpec spec;
    if (state.range(0) > 1) {
        spec.kind = ModelKind::TCM;
        spec.n_atoms = int(state.range(0));
    }
    const EncodedModel model = encode(spec);
    const TrotterPlan plan = build_step(model.hamiltonian, 0.01);
    StateVector psi = initial_state(spec);
    for (auto _ : state) {
        psi = run(plan.step_circuit, psi);
        benchmark::DoNotOptimize(psi.amp.data());
    }
}
BENCHMARK(BM_trotter_step)->Arg(1)->Arg(2)->Arg(3);

void BM_expectation(benchmark::State& state) {
    ModelSpec spec;
    spec.kind = ModelKind::TCM;
    spec.n_atoms = int(state.range(0));
    const EncodedModel model = encode(spec);
    const StateVector psi = haar_like_state(spec.n_qubits(), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(expectation(psi, model.hamiltonian));
    }
}
BENCHMARK(BM_expectation)->Arg(2)->Arg(3);

}  // namespace
