// SPDX-License-Identifier: Apache-2.0
//
// rabi-forge: statevector comparison of direct Trotterisation, ISL
// compilation and McLachlan VQS on qubit-encoded cavity models.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rabiforge/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rabi-forge: low-depth time evolution on cavity toy models"};
    app.require_subcommand(1);

    CLI::App* run_cmd = app.add_subcommand("run", "run an experiment");
    std::string preset, config_path, method, out_dir;
    double dt = -1.0, t_max = -1.0, lambda = -1.0, isl_tolerance = -1.0;
    long shots = -1;
    std::uint64_t seed = 0;
    bool saw_seed = false, exact_flag = false;
    bool plot = false, dump_hamiltonian = false, dump_ansatz = false, dump_parameters = false;
    bool paper_literal_entropy = false;
    int layers = -1;

    run_cmd->add_option("--preset", preset, "named experiment: " + [] {
        std::string names;
        for (const std::string& n : rabiforge::preset_names()) names += n + " ";
        return names;
    }());
    run_cmd->add_option("--config", config_path, "JSON config file");
    run_cmd->add_option("--method", method, "trotter|isl|vqs|exact|all");
    run_cmd->add_option("--dt", dt, "time step");
    run_cmd->add_option("--t-max", t_max, "total evolution time");
    run_cmd->add_option("--shots", shots, "shots per measured term (enables shot mode)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "RNG seed for shot mode");
    run_cmd->add_flag("--exact", exact_flag, "force exact measurement");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_flag("--plot", plot, "also write plot.svg");
    run_cmd->add_flag("--dump-hamiltonian", dump_hamiltonian, "print the encoded Hamiltonian");
    run_cmd->add_flag("--dump-ansatz", dump_ansatz, "write the per-step ISL block listing");
    run_cmd->add_flag("--dump-parameters", dump_parameters, "write the VQS parameter history");
    run_cmd->add_flag("--paper-literal-entropy", paper_literal_entropy,
                      "use the printed entropy forms for ISL pair selection");
    run_cmd->add_option("--lambda", lambda, "VQS Tikhonov regularisation");
    run_cmd->add_option("--layers", layers, "VQS ansatz layers (even)");
    run_cmd->add_option("--isl-tolerance", isl_tolerance, "ISL cost tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    saw_seed = seed_opt->count() > 0;

    try {
        rabiforge::RunConfig config;
        if (!preset.empty()) config = rabiforge::preset_config(preset);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw rabiforge::config_error("cannot read config file: " + config_path);
            std::stringstream buffer;
            buffer << f.rdbuf();
            rabiforge::apply_json_text(config, buffer.str());
        }
        if (!method.empty()) config.method = method;
        if (dt > 0) config.dt = dt;
        if (t_max > 0) config.t_max = t_max;
        if (shots > 0) {
            if (!saw_seed)
                throw rabiforge::config_error("--shots needs --seed for reproducible sampling");
            config.measurement = rabiforge::Measurement::with_shots(shots, seed);
        }
        if (exact_flag) config.measurement = rabiforge::Measurement::exact();
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (plot) config.plot = true;
        if (dump_hamiltonian) config.dump_hamiltonian = true;
        if (dump_ansatz) config.dump_ansatz = true;
        if (dump_parameters) config.dump_parameters = true;
        if (paper_literal_entropy) config.isl.paper_literal_entropy = true;
        if (lambda >= 0) config.vqs.lambda = lambda;
        if (layers > 0) config.vqs.layers = layers;
        if (isl_tolerance > 0) config.isl.tolerance = isl_tolerance;

        const rabiforge::RunSummary summary = rabiforge::run(config);
        std::cout << summary.text;
        return 0;
    } catch (const rabiforge::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 2;
    }
}
