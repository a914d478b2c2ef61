// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rabiforge {

std::string format_sig(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out =
        "step,t,E_system,E_atom,E_field,E_atom_exact,E_system_exact,abs_err_atom,abs_err_system";
    if (!traj.extra_name.empty()) out += "," + traj.extra_name;
    if (traj.has_flag_column) out += ",flagged";
    out += '\n';
    for (const TrajectoryRow& r : traj.rows) {
        out += std::to_string(r.step);
        out += ',' + format_sig(r.t);
        out += ',' + format_sig(r.e_system);
        out += ',' + format_sig(r.e_atom);
        out += ',' + format_sig(r.e_field);
        out += ',' + format_sig(r.e_atom_exact);
        out += ',' + format_sig(r.e_system_exact);
        out += ',' + format_sig(r.abs_err_atom);
        out += ',' + format_sig(r.abs_err_system);
        if (!traj.extra_name.empty()) out += ',' + format_sig(r.extra);
        if (traj.has_flag_column) out += r.flagged ? ",1" : ",0";
        out += '\n';
    }
    return out;
}

namespace {
void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}
}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    write_file(path, trajectory_csv(traj));
}

std::string ledger_csv(const EvalLedger& ledger) {
    std::string out =
        "step,method,evals_observables,evals_cost_probes,evals_matrix_elements,total,"
        "total_depth,two_qubit_depth\n";
    for (const LedgerRow& r : ledger.rows) {
        out += std::to_string(r.step);
        out += ',' + r.method;
        out += ',' + std::to_string(r.evals_observables);
        out += ',' + std::to_string(r.evals_cost_probes);
        out += ',' + std::to_string(r.evals_matrix_elements);
        out += ',' + std::to_string(r.total);
        out += ',' + std::to_string(r.total_depth);
        out += ',' + std::to_string(r.two_qubit_depth);
        out += '\n';
    }
    return out;
}

void write_ledger_csv(const std::string& path, const EvalLedger& ledger) {
    write_file(path, ledger_csv(ledger));
}

std::string depths_csv(const std::vector<DepthRow>& rows) {
    std::string out = "step,method,total_depth,two_qubit_depth\n";
    for (const DepthRow& r : rows) {
        out += std::to_string(r.step);
        out += ',' + r.method;
        out += ',' + std::to_string(r.total_depth);
        out += ',' + std::to_string(r.two_qubit_depth);
        out += '\n';
    }
    return out;
}

void write_depths_csv(const std::string& path, const std::vector<DepthRow>& rows) {
    write_file(path, depths_csv(rows));
}

}  // namespace rabiforge
