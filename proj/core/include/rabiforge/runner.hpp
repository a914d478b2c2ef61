// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rabiforge/isl.hpp"
#include "rabiforge/models.hpp"
#include "rabiforge/statevector.hpp"
#include "rabiforge/vqs.hpp"

namespace rabiforge {

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Full description of one experiment. Defaults reproduce the reference
/// parameter set: S = 1/2, omega = 2, Omega = 10, dt = 0.01, k = 1000 in shot
/// mode, two Rabi periods of evolution.
struct RunConfig {
    ModelSpec model;
    std::string method = "all";  // trotter | isl | vqs | exact | all
    double dt = 0.01;
    double t_max = 1.2566370614359172;  // 4*pi/Omega for the default JCM
    Measurement measurement = Measurement::exact();
    IslConfig isl;
    VqsConfig vqs;
    std::string out_dir = "out";
    bool plot = false;
    bool dump_hamiltonian = false;
    bool dump_ansatz = false;
    bool dump_parameters = false;
    std::string flow = "trajectory";  // trajectory | detuning | quanta | table1
    std::vector<double> detunings = {0.0, 0.5, -0.5, 1.0, -1.0};
    std::vector<int> quanta = {1, 2, 3};

    void validate() const;
};

/// Named zero-argument experiment configurations.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Strict JSON overlay onto a config; unknown keys raise config_error naming
/// the field.
void apply_json_text(RunConfig& config, const std::string& json_text);
RunConfig config_from_file(const std::string& path);

struct RunSummary {
    std::vector<std::string> files_written;
    std::string text;  // console report
};

RunSummary run_experiment(const RunConfig& config);
RunSummary run_detuning(const RunConfig& config);
RunSummary run_quanta_scaling(const RunConfig& config);
RunSummary run_table1(const RunConfig& config);

/// Dispatch by config.flow.
RunSummary run(const RunConfig& config);

/// Renders the named columns of a trajectory-style CSV against the t column.
void emit_plot(const std::string& csv_path, const std::vector<std::string>& columns,
               const std::string& svg_path, const std::string& title);

/// Minimal CSV reader for the plotting path (header + numeric rows).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
    std::vector<double> values(int column) const;
};
CsvTable read_csv(const std::string& path);

}  // namespace rabiforge
