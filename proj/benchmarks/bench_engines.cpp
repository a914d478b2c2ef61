// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "rabiforge/exact.hpp"
#include "rabiforge/isl.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/vqs.hpp"

using namespace rabiforge;

namespace {

void BM_exact_evolve(benchmark::State& state) {
    ModelSpec spec;
    const ExactPropagator prop = prepare(encode(spec).hamiltonian, 2);
    const StateVector init = initial_state(spec);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(evolve(prop, init, t).amp.data());
    }
}
BENCHMARK(BM_exact_evolve);

void BM_isl_step(benchmark::State& state) {
    ModelSpec spec;
    if (state.range(0) > 1) {
        spec.kind = ModelKind::TCM;
        spec.n_atoms = int(state.range(0));
    }
    IslConfig config;
    for (auto _ : state) {
        const IslResult r = evolve_isl(spec, 0.01, 0.01, config, Measurement::exact());
        benchmark::DoNotOptimize(r.steps.back().final_cost);
    }
}
BENCHMARK(BM_isl_step)->Arg(1)->Arg(2);

void BM_vqs_assemble_direct(benchmark::State& state) {
    ModelSpec spec;
    const EncodedModel model = encode(spec);
    const VqsAnsatz ansatz = build_ansatz(spec, 2);
    std::vector<double> theta(size_t(ansatz.n_params), 0.1);
    for (auto _ : state) {
        const McLachlanSystem sys = assemble(ansatz, theta, model.hamiltonian,
                                             AssembleMode::Direct, Measurement::exact());
        benchmark::DoNotOptimize(sys.a.data());
    }
}
BENCHMARK(BM_vqs_assemble_direct);

void BM_vqs_assemble_hadamard(benchmark::State& state) {
    ModelSpec spec;
    const EncodedModel model = encode(spec);
    const VqsAnsatz ansatz = build_ansatz(spec, 2);
    std::vector<double> theta(size_t(ansatz.n_params), 0.1);
    for (auto _ : state) {
        const McLachlanSystem sys = assemble(ansatz, theta, model.hamiltonian,
                                             AssembleMode::HadamardTest, Measurement::exact());
        benchmark::DoNotOptimize(sys.a.data());
    }
}
BENCHMARK(BM_vqs_assemble_hadamard);

void BM_concurrence(benchmark::State& state) {
    Circuit c(3);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::ry(2, 0.4));
    c.append(Gate::cnot(1, 2));
    const StateVector s = run(c, StateVector::zero_state(3));
    const DensityMatrix rho = reduce(s, 0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(concurrence(rho));
    }
}
BENCHMARK(BM_concurrence);

}  // namespace
