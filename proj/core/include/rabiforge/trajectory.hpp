// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rabiforge/ledger.hpp"
#include "rabiforge/statevector.hpp"

namespace rabiforge {

struct TrajectoryRow {
    long step = 0;
    double t = 0.0;
    double e_system = 0.0;
    double e_atom = 0.0;
    double e_field = 0.0;
    double e_atom_exact = 0.0;
    double e_system_exact = 0.0;
    double abs_err_atom = 0.0;
    double abs_err_system = 0.0;
    double extra = 0.0;    // isl_cost / vqs_residual
    bool flagged = false;  // ISL step that missed its tolerance
};

/// Time series of one method's run, plus the simulated per-step states (kept
/// for population checks; registers are tiny).
struct Trajectory {
    std::string method;
    std::string extra_name;  // empty, "isl_cost" or "vqs_residual"
    bool has_flag_column = false;
    std::vector<TrajectoryRow> rows;
    std::vector<StateVector> states;
    std::map<std::string, std::string> metadata;
};

/// Header + one row per step, 12 significant digits, fixed column order.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

std::string ledger_csv(const EvalLedger& ledger);
void write_ledger_csv(const std::string& path, const EvalLedger& ledger);

struct DepthRow {
    long step = 0;
    std::string method;
    long total_depth = 0;
    long two_qubit_depth = 0;
};
std::string depths_csv(const std::vector<DepthRow>& rows);
void write_depths_csv(const std::string& path, const std::vector<DepthRow>& rows);

/// %.12g formatting shared by every CSV writer (diff-able golden files).
std::string format_sig(double v);

}  // namespace rabiforge
