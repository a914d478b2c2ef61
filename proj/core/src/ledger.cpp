// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rabiforge {

std::string method_name(Method m) {
    switch (m) {
        case Method::Trotter: return "trotter";
        case Method::ISL: return "isl";
        case Method::VQS: return "vqs";
        case Method::Exact: return "exact";
    }
    return "?";
}

void DepthTracker::append(const Gate& gate) {
    if (gate.kind == GateKind::PauliExp)
        throw std::invalid_argument("lower PauliExp gates before depth tracking");
    const std::vector<int> qs = gate.touched();
    ++report_.gate_counts[size_t(gate.kind)];

    long layer = 0;
    for (int q : qs) layer = std::max(layer, front_[size_t(q)]);
    ++layer;
    for (int q : qs) front_[size_t(q)] = layer;
    report_.total_depth = std::max(report_.total_depth, layer);

    if (qs.size() >= 2) {
        long layer2 = 0;
        for (int q : qs) layer2 = std::max(layer2, front2q_[size_t(q)]);
        ++layer2;
        for (int q : qs) front2q_[size_t(q)] = layer2;
        report_.two_qubit_depth = std::max(report_.two_qubit_depth, layer2);
    }
}

void DepthTracker::append(const Circuit& circuit) {
    for (const Gate& g : circuit.gates) append(g);
}

DepthReport depth(const Circuit& circuit) {
    const Circuit primitive = circuit.lowered();
    DepthTracker tracker(circuit.n_qubits);
    tracker.append(primitive);
    return tracker.report();
}

void EvalCounts::record(EvalCategory category, long n) {
    switch (category) {
        case EvalCategory::Observables: observables_.fetch_add(n); break;
        case EvalCategory::CostProbes: cost_probes_.fetch_add(n); break;
        case EvalCategory::MatrixElements: matrix_elements_.fetch_add(n); break;
    }
}

long EvalCounts::total() const {
    return observables() + cost_probes() + matrix_elements();
}

void EvalLedger::add(long step, const std::string& method, const EvalCounts& counts,
                     const DepthReport& depths) {
    LedgerRow row;
    row.step = step;
    row.method = method;
    row.evals_observables = counts.observables();
    row.evals_cost_probes = counts.cost_probes();
    row.evals_matrix_elements = counts.matrix_elements();
    row.total = counts.total();
    row.total_depth = depths.total_depth;
    row.two_qubit_depth = depths.two_qubit_depth;
    rows.push_back(std::move(row));
}

long predict_evals(Method method, long k, double n_p, double n_pm, double n_l,
                   double n_ev) {
    if (k < 0 || n_p < 0 || n_pm < 0 || n_l < 0 || n_ev < 0)
        throw std::invalid_argument("evaluation counts must be non-negative");
    const double kk = double(k);
    double c = 0.0;
    switch (method) {
        case Method::Exact:
        case Method::Trotter:
            c = kk * n_p;
            break;
        case Method::ISL:
            c = kk * n_p + n_l * n_ev * kk;
            break;
        case Method::VQS:
            c = kk * n_p + 0.5 * kk * n_pm * (n_pm + 1.0) + n_pm * n_p * kk;
            break;
    }
    return llround(c);
}

}  // namespace rabiforge
