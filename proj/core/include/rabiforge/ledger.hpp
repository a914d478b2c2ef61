// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "rabiforge/circuit.hpp"

namespace rabiforge {

enum class Method { Trotter, ISL, VQS, Exact };

std::string method_name(Method m);

/// Greedy as-soon-as-possible layering. total_depth layers every gate;
/// two_qubit_depth applies the same metric to the subsequence of gates
/// touching two or more qubits. PauliExp gates are counted in their lowered
/// (basis change + CNOT ladder) form.
struct DepthReport {
    long total_depth = 0;
    long two_qubit_depth = 0;
    std::array<long, 9> gate_counts{};  // indexed by GateKind

    long count(GateKind k) const { return gate_counts[size_t(k)]; }
};

DepthReport depth(const Circuit& circuit);

/// Incremental layering for circuits that grow step by step (the m-step
/// Trotter chain). Gates must already be in primitive form.
class DepthTracker {
  public:
    explicit DepthTracker(int n_qubits)
        : front_(size_t(n_qubits), 0), front2q_(size_t(n_qubits), 0) {}

    void append(const Gate& gate);
    void append(const Circuit& circuit);
    DepthReport report() const { return report_; }

  private:
    std::vector<long> front_;
    std::vector<long> front2q_;
    DepthReport report_;
};

enum class EvalCategory { Observables, CostProbes, MatrixElements };

/// Per-step circuit-evaluation counters. record() is atomic: concurrent
/// evaluators may share one instance.
class EvalCounts {
  public:
    void record(EvalCategory category, long n);
    long observables() const { return observables_.load(); }
    long cost_probes() const { return cost_probes_.load(); }
    long matrix_elements() const { return matrix_elements_.load(); }
    long total() const;

  private:
    std::atomic<long> observables_{0};
    std::atomic<long> cost_probes_{0};
    std::atomic<long> matrix_elements_{0};
};

struct LedgerRow {
    long step = 0;
    std::string method;
    long evals_observables = 0;
    long evals_cost_probes = 0;
    long evals_matrix_elements = 0;
    long total = 0;
    long total_depth = 0;
    long two_qubit_depth = 0;
};

struct EvalLedger {
    std::vector<LedgerRow> rows;

    void add(long step, const std::string& method, const EvalCounts& counts,
             const DepthReport& depths);
};

/// Circuit evaluations per time step: DT k*n_p; ISL k*n_p + n_l*n_ev*k;
/// VQS k*n_p + k*n_pm(n_pm+1)/2 + n_pm*n_p*k. Fractional averages for n_l
/// and n_ev are allowed; the result is rounded once at the end.
long predict_evals(Method method, long k, double n_p, double n_pm = 0.0,
                   double n_l = 0.0, double n_ev = 0.0);

}  // namespace rabiforge
