// SPDX-License-Identifier: Apache-2.0
#include "rabiforge/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rabiforge/plot.hpp"
#include "rabiforge/trotter.hpp"

namespace rabiforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Extremum {
    double t = 0.0;
    double value = 0.0;
};

/// Quadratic refinement of a discrete extremum through three samples.
Extremum refine(const std::vector<double>& ts, const std::vector<double>& es, std::size_t i) {
    Extremum out{ts[i], es[i]};
    if (i == 0 || i + 1 >= es.size()) return out;
    const double denom = es[i - 1] - 2.0 * es[i] + es[i + 1];
    if (std::abs(denom) < 1e-30) return out;
    const double offset = 0.5 * (es[i - 1] - es[i + 1]) / denom;
    const double dt = ts[i + 1] - ts[i];
    out.t = ts[i] + offset * dt;
    out.value = es[i] - (es[i - 1] - es[i + 1]) * (es[i - 1] - es[i + 1]) / (8.0 * denom);
    return out;
}

/// First interior local minimum of the series; `after_peak` requires a local
/// maximum to occur first (for series that start at a minimum).
Extremum first_minimum(const std::vector<double>& ts, const std::vector<double>& es,
                       bool after_peak) {
    std::size_t start = 1;
    if (after_peak) {
        std::size_t peak = 0;
        for (std::size_t i = 1; i + 1 < es.size(); ++i) {
            if (es[i] >= es[i - 1] && es[i] >= es[i + 1]) {
                peak = i;
                break;
            }
        }
        if (peak == 0)
            throw config_error(
                "t_max too short to reach the first minimum (no maximum reached yet)");
        start = peak + 1;
    }
    for (std::size_t i = start; i + 1 < es.size(); ++i)
        if (es[i] <= es[i - 1] && es[i] <= es[i + 1]) return refine(ts, es, i);
    throw config_error("t_max too short to reach the first minimum");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

struct EngineOutputs {
    Trajectory trajectory;
    EvalLedger ledger;
    std::vector<DepthRow> depth_rows;
    std::string ansatz_text;      // non-empty when the ISL dump was requested
    std::string parameters_text;  // non-empty when the VQS dump was requested
};

EngineOutputs run_method(const std::string& method, const RunConfig& config) {
    EngineOutputs out;
    if (method == "trotter") {
        TrotterResult r = evolve_trotter(config.model, config.dt, config.t_max,
                                         config.measurement);
        out.trajectory = std::move(r.trajectory);
        out.ledger = std::move(r.ledger);
        out.depth_rows = std::move(r.depth_rows);
    } else if (method == "exact") {
        TrotterResult r = evolve_exact(config.model, config.dt, config.t_max);
        out.trajectory = std::move(r.trajectory);
        out.ledger = std::move(r.ledger);
        out.depth_rows = std::move(r.depth_rows);
    } else if (method == "isl") {
        IslResult r =
            evolve_isl(config.model, config.dt, config.t_max, config.isl, config.measurement);
        out.trajectory = std::move(r.trajectory);
        out.ledger = std::move(r.ledger);
        out.depth_rows = std::move(r.depth_rows);
    } else if (method == "vqs") {
        VqsResult r =
            evolve_vqs(config.model, config.vqs, config.dt, config.t_max, config.measurement);
        out.trajectory = std::move(r.trajectory);
        out.ledger = std::move(r.ledger);
        out.depth_rows = std::move(r.depth_rows);
    } else {
        throw config_error("method: unknown value '" + method + "'");
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    static const std::set<std::string> methods{"trotter", "isl", "vqs", "exact", "all"};
    if (!methods.count(method)) throw config_error("method: unknown value '" + method + "'");
    static const std::set<std::string> flows{"trajectory", "detuning", "quanta", "table1"};
    if (!flows.count(flow)) throw config_error("flow: unknown value '" + flow + "'");
    if (!(dt > 0.0)) throw config_error("dt: must be positive");
    if (flow != "table1" && t_max < dt) throw config_error("t_max: must be at least dt");
    if (!measurement.is_exact() && measurement.shots < 1)
        throw config_error("measurement.shots: must be >= 1");
    if (isl.tolerance <= 0.0) throw config_error("isl.tolerance: must be positive");
    if (isl.max_blocks < 1) throw config_error("isl.max_blocks: must be >= 1");
    if (vqs.lambda < 0.0) throw config_error("vqs.lambda: must be non-negative");
    try {
        model.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("model: ") + e.what());
    }
    if (flow == "quanta") {
        for (int n : quanta)
            if (n < 1 || n > 3) throw config_error("quanta: entries must be in {1, 2, 3}");
        if (std::find(quanta.begin(), quanta.end(), 1) == quanta.end())
            throw config_error("quanta: the list must contain 1 (the ratio reference)");
    }
}

std::vector<std::string> preset_names() {
    return {"jcm-fig2", "tcm-fig3", "table1", "detuning", "quanta-scaling"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig config;  // defaults already reproduce the JCM reference setup
    if (name == "jcm-fig2") return config;
    if (name == "tcm-fig3") {
        config.model.kind = ModelKind::TCM;
        config.model.n_atoms = 2;
        config.t_max = 4.0 * std::numbers::pi / (std::sqrt(2.0) * config.model.coupling);
        return config;
    }
    if (name == "table1") {
        config.flow = "table1";
        return config;
    }
    if (name == "detuning") {
        config.flow = "detuning";
        config.model.kind = ModelKind::DetunedJCM;
        config.t_max = 1.4;
        return config;
    }
    if (name == "quanta-scaling") {
        config.flow = "quanta";
        config.t_max = 1.0;
        return config;
    }
    throw config_error("unknown preset: " + name);
}

namespace {

void apply_model_json(ModelSpec& model, const json& j) {
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") model.kind = model_kind_from_name(value.get<std::string>());
        else if (key == "n_atoms") model.n_atoms = value.get<int>();
        else if (key == "spin") model.spin = value.get<double>();
        else if (key == "omega") model.omega = value.get<double>();
        else if (key == "omega_atom") model.omega_atom = value.get<double>();
        else if (key == "coupling") model.coupling = value.get<double>();
        else if (key == "tcm_positive_coupling") model.tcm_positive_coupling = value.get<bool>();
        else throw config_error("unknown config field: model." + key);
    }
}

void apply_measurement_json(Measurement& m, const json& j) {
    std::string mode = "exact";
    long shots = 1000;
    std::uint64_t seed = 0;
    bool saw_seed = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "mode") mode = value.get<std::string>();
        else if (key == "shots") shots = value.get<long>();
        else if (key == "seed") { seed = value.get<std::uint64_t>(); saw_seed = true; }
        else throw config_error("unknown config field: measurement." + key);
    }
    if (mode == "exact") {
        m = Measurement::exact();
    } else if (mode == "shots") {
        if (!saw_seed) throw config_error("measurement.seed: required in shot mode");
        m = Measurement::with_shots(shots, seed);
    } else {
        throw config_error("measurement.mode: unknown value '" + mode + "'");
    }
}

void apply_isl_json(IslConfig& isl, const json& j) {
    for (const auto& [key, value] : j.items()) {
        if (key == "tolerance") isl.tolerance = value.get<double>();
        else if (key == "cycle_improvement_threshold")
            isl.cycle_improvement_threshold = value.get<double>();
        else if (key == "max_blocks") isl.max_blocks = value.get<int>();
        else if (key == "optimizer_budget") isl.optimizer_budget = value.get<long>();
        else if (key == "paper_literal_entropy") isl.paper_literal_entropy = value.get<bool>();
        else throw config_error("unknown config field: isl." + key);
    }
}

void apply_vqs_json(VqsConfig& vqs, const json& j) {
    for (const auto& [key, value] : j.items()) {
        if (key == "layers") vqs.layers = value.get<int>();
        else if (key == "lambda") vqs.lambda = value.get<double>();
        else if (key == "mode") {
            const std::string mode = value.get<std::string>();
            if (mode == "direct") vqs.mode = AssembleMode::Direct;
            else if (mode == "hadamard") vqs.mode = AssembleMode::HadamardTest;
            else throw config_error("vqs.mode: unknown value '" + mode + "'");
        } else {
            throw config_error("unknown config field: vqs." + key);
        }
    }
}

}  // namespace

void apply_json_text(RunConfig& config, const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config JSON parse error: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "model") apply_model_json(config.model, value);
        else if (key == "method") config.method = value.get<std::string>();
        else if (key == "dt") config.dt = value.get<double>();
        else if (key == "t_max") config.t_max = value.get<double>();
        else if (key == "measurement") apply_measurement_json(config.measurement, value);
        else if (key == "isl") apply_isl_json(config.isl, value);
        else if (key == "vqs") apply_vqs_json(config.vqs, value);
        else if (key == "out_dir") config.out_dir = value.get<std::string>();
        else if (key == "plot") config.plot = value.get<bool>();
        else if (key == "dump_hamiltonian") config.dump_hamiltonian = value.get<bool>();
        else if (key == "dump_ansatz") config.dump_ansatz = value.get<bool>();
        else if (key == "dump_parameters") config.dump_parameters = value.get<bool>();
        else if (key == "flow") config.flow = value.get<std::string>();
        else if (key == "detunings") config.detunings = value.get<std::vector<double>>();
        else if (key == "quanta") config.quanta = value.get<std::vector<int>>();
        else if (key == "preset") { /* handled by the CLI before the overlay */ }
        else throw config_error("unknown config field: " + key);
    }
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read config file: " + path);
    std::stringstream buffer;
    buffer << f.rdbuf();
    RunConfig config;
    apply_json_text(config, buffer.str());
    return config;
}

RunSummary run_experiment(const RunConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);
    RunSummary summary;

    if (config.dump_hamiltonian) {
        const EncodedModel model = encode(config.model);
        summary.text += "Hamiltonian (" + model_kind_name(config.model.kind) + "):\n" +
                        model.hamiltonian.text();
    }

    std::vector<std::string> methods;
    if (config.method == "all") methods = {"exact", "trotter", "isl", "vqs"};
    else methods = {config.method};

    EvalLedger combined_ledger;
    std::vector<DepthRow> combined_depths;
    std::vector<Trajectory> trajectories;

    // Independent method runs share nothing mutable; run them concurrently
    // and join in a fixed order so the output files stay deterministic.
    std::vector<std::future<EngineOutputs>> futures;
    for (const std::string& method : methods) {
        futures.push_back(std::async(std::launch::async, [&config, method]() {
            EngineOutputs out;
            if (method == "isl") {
                IslResult r = evolve_isl(config.model, config.dt, config.t_max, config.isl,
                                         config.measurement);
                if (config.dump_ansatz) out.ansatz_text = ansatz_dump(r.steps);
                out.trajectory = std::move(r.trajectory);
                out.ledger = std::move(r.ledger);
                out.depth_rows = std::move(r.depth_rows);
            } else if (method == "vqs") {
                VqsResult r = evolve_vqs(config.model, config.vqs, config.dt, config.t_max,
                                         config.measurement);
                if (config.dump_parameters) out.parameters_text = parameter_history_csv(r);
                out.trajectory = std::move(r.trajectory);
                out.ledger = std::move(r.ledger);
                out.depth_rows = std::move(r.depth_rows);
            } else {
                out = run_method(method, config);
            }
            return out;
        }));
    }
    for (std::size_t k = 0; k < methods.size(); ++k) {
        EngineOutputs out = futures[k].get();
        if (!out.ansatz_text.empty()) {
            const std::string dump_path = join(config.out_dir, "ansatz_isl.txt");
            write_text(dump_path, out.ansatz_text);
            summary.files_written.push_back(dump_path);
        }
        if (!out.parameters_text.empty()) {
            const std::string dump_path = join(config.out_dir, "parameters_vqs.csv");
            write_text(dump_path, out.parameters_text);
            summary.files_written.push_back(dump_path);
        }
        const std::string path = join(config.out_dir, "trajectory_" + methods[k] + ".csv");
        write_trajectory_csv(path, out.trajectory);
        summary.files_written.push_back(path);
        combined_ledger.rows.insert(combined_ledger.rows.end(), out.ledger.rows.begin(),
                                    out.ledger.rows.end());
        combined_depths.insert(combined_depths.end(), out.depth_rows.begin(),
                               out.depth_rows.end());
        trajectories.push_back(std::move(out.trajectory));
    }

    const std::string ledger_path = join(config.out_dir, "ledger.csv");
    write_ledger_csv(ledger_path, combined_ledger);
    summary.files_written.push_back(ledger_path);
    const std::string depths_path = join(config.out_dir, "depths.csv");
    write_depths_csv(depths_path, combined_depths);
    summary.files_written.push_back(depths_path);

    if (config.method == "all") {
        std::string csv = "step,t";
        for (const Trajectory& tr : trajectories) csv += ",E_atom_" + tr.method;
        for (const Trajectory& tr : trajectories) csv += ",E_system_" + tr.method;
        csv += '\n';
        const std::size_t rows = trajectories.front().rows.size();
        for (std::size_t r = 0; r < rows; ++r) {
            csv += std::to_string(trajectories.front().rows[r].step) + ',' +
                   format_sig(trajectories.front().rows[r].t);
            for (const Trajectory& tr : trajectories) csv += ',' + format_sig(tr.rows[r].e_atom);
            for (const Trajectory& tr : trajectories)
                csv += ',' + format_sig(tr.rows[r].e_system);
            csv += '\n';
        }
        const std::string cmp_path = join(config.out_dir, "comparison.csv");
        write_text(cmp_path, csv);
        summary.files_written.push_back(cmp_path);
    }

    if (config.plot) {
        std::vector<PlotSeries> series;
        for (const Trajectory& tr : trajectories) {
            PlotSeries s;
            s.label = "E_atom " + tr.method;
            for (const TrajectoryRow& row : tr.rows) {
                s.x.push_back(row.t);
                s.y.push_back(row.e_atom);
            }
            series.push_back(std::move(s));
        }
        const std::string plot_path = join(config.out_dir, "plot.svg");
        write_svg_plot(plot_path, series, "t", "atom energy",
                       model_kind_name(config.model.kind) + " time evolution");
        summary.files_written.push_back(plot_path);
    }

    for (const std::string& f : summary.files_written) summary.text += "wrote " + f + "\n";
    return summary;
}

RunSummary run_detuning(const RunConfig& config) {
    config.validate();
    if (config.model.kind != ModelKind::DetunedJCM)
        throw config_error("model.kind: the detuning flow needs detuned_jcm");
    fs::create_directories(config.out_dir);

    std::string csv = "omega_atom,delta,amplitude\n";
    std::vector<PlotSeries> series;
    std::vector<std::future<TrotterResult>> sweeps;
    for (double delta : config.detunings) {
        sweeps.push_back(std::async(std::launch::async, [&config, delta]() {
            ModelSpec spec = config.model;
            spec.omega_atom = spec.omega + delta;
            return evolve_trotter(spec, config.dt, config.t_max, config.measurement);
        }));
    }
    for (std::size_t k = 0; k < config.detunings.size(); ++k) {
        const double delta = config.detunings[k];
        const TrotterResult r = sweeps[k].get();
        std::vector<double> ts, fields;
        for (const TrajectoryRow& row : r.trajectory.rows) {
            ts.push_back(row.t);
            fields.push_back(row.e_field);
        }
        const Extremum bottom = first_minimum(ts, fields, /*after_peak=*/false);
        const double amplitude = fields.front() - bottom.value;
        csv += format_sig(config.model.omega + delta) + ',' + format_sig(delta) + ',' +
               format_sig(amplitude) + '\n';

        PlotSeries s;
        s.label = "delta=" + format_sig(delta);
        s.x = ts;
        s.y = fields;
        series.push_back(std::move(s));
    }

    RunSummary summary;
    const std::string path = join(config.out_dir, "detuning.csv");
    write_text(path, csv);
    summary.files_written.push_back(path);
    if (config.plot) {
        const std::string plot_path = join(config.out_dir, "plot.svg");
        write_svg_plot(plot_path, series, "t", "field energy", "detuned field energy");
        summary.files_written.push_back(plot_path);
    }
    summary.text = csv;
    return summary;
}

RunSummary run_quanta_scaling(const RunConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);

    std::string csv = "n_atoms,t_first_min,fitted_frequency,ratio_vs_n1\n";
    double reference_freq = 0.0;
    std::vector<std::future<TrotterResult>> sweeps;
    for (int n : config.quanta) {
        sweeps.push_back(std::async(std::launch::async, [&config, n]() {
            ModelSpec spec = config.model;
            spec.kind = n == 1 ? ModelKind::JCM : ModelKind::TCM;
            spec.n_atoms = n;
            return evolve_trotter(spec, config.dt, config.t_max, config.measurement);
        }));
    }
    std::vector<std::pair<int, double>> fits;
    for (std::size_t k = 0; k < config.quanta.size(); ++k) {
        const int n = config.quanta[k];
        const TrotterResult r = sweeps[k].get();
        std::vector<double> ts, atoms;
        for (const TrajectoryRow& row : r.trajectory.rows) {
            ts.push_back(row.t);
            atoms.push_back(row.e_atom);
        }
        const Extremum bottom = first_minimum(ts, atoms, /*after_peak=*/true);
        const double freq = 2.0 * std::numbers::pi / bottom.t;
        fits.push_back({n, freq});
        if (n == 1) reference_freq = freq;
    }
    for (const auto& [n, freq] : fits) {
        const double t_min = 2.0 * std::numbers::pi / freq;
        csv += std::to_string(n) + ',' + format_sig(t_min) + ',' + format_sig(freq) + ',' +
               format_sig(freq / reference_freq) + '\n';
    }

    RunSummary summary;
    const std::string path = join(config.out_dir, "quanta_scaling.csv");
    write_text(path, csv);
    summary.files_written.push_back(path);
    summary.text = csv;
    return summary;
}

RunSummary run_table1(const RunConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);
    const long k = 1000;
    const double n_p = 7, n_pm = 18, n_l = 5.5, n_ev = 919;
    const long dt_c = predict_evals(Method::Trotter, k, n_p);
    const long isl_c = predict_evals(Method::ISL, k, n_p, 0, n_l, n_ev);
    const long vqs_c = predict_evals(Method::VQS, k, n_p, n_pm);

    std::string csv = "method,circuit_evaluations_per_step\n";
    csv += "trotter," + std::to_string(dt_c) + '\n';
    csv += "isl," + std::to_string(isl_c) + '\n';
    csv += "vqs," + std::to_string(vqs_c) + '\n';

    RunSummary summary;
    const std::string path = join(config.out_dir, "table1.csv");
    write_text(path, csv);
    summary.files_written.push_back(path);
    summary.text =
        "circuit evaluations per time step (k=1000, n_p=7, n_pm=18, n_l=5.5, n_ev=919)\n" + csv;
    return summary;
}

RunSummary run(const RunConfig& config) {
    if (config.flow == "trajectory") return run_experiment(config);
    if (config.flow == "detuning") return run_detuning(config);
    if (config.flow == "quanta") return run_quanta_scaling(config);
    if (config.flow == "table1") return run_table1(config);
    throw config_error("flow: unknown value '" + config.flow + "'");
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return int(i);
    return -1;
}

std::vector<double> CsvTable::values(int column) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.at(size_t(column)));
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot read CSV: " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) row.push_back(std::stod(c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void emit_plot(const std::string& csv_path, const std::vector<std::string>& columns,
               const std::string& svg_path, const std::string& title) {
    const CsvTable table = read_csv(csv_path);
    const int x_col = table.column("t");
    if (x_col < 0) throw config_error("column not in CSV: t");
    const std::vector<double> xs = table.values(x_col);

    std::vector<PlotSeries> series;
    for (const std::string& name : columns) {
        const int col = table.column(name);
        if (col < 0) throw config_error("column not in CSV: " + name);
        PlotSeries s;
        s.label = name;
        s.x = xs;
        s.y = table.values(col);
        series.push_back(std::move(s));
    }
    write_svg_plot(svg_path, series, "t", "value", title);
}

}  // namespace rabiforge
