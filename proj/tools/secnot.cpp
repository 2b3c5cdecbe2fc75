// Command-line front end: one subcommand per experiment, JSON config file
// plus flag overrides (flags win).

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "secnot/config.hpp"

namespace {

secnot::cli::ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw secnot::cli::ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    f >> j;
    return j.get<secnot::cli::ExperimentConfig>();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface-electron Rydberg CNOT simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, initial, scheme;
    double omega = 0, kappa1 = -1, k2r = -1, k3r = -1, d1 = 0, d2 = 0;
    double sweep_min = 0, sweep_max = 0;
    std::vector<double> ez;
    int points = 0, sweep_points = 0, samples = 0, n_levels = 0;
    bool coherences = false;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output file path");
    app.add_option("--format", format, "csv|json");
    app.add_option("--omega", omega, "total Rabi frequency (s^-1)");
    app.add_option("--kappa1", kappa1, "decay rate of |01> (s^-1)");
    app.add_option("--kappa2-ratio", k2r, "kappa2/kappa1");
    app.add_option("--kappa3-ratio", k3r, "kappa3/kappa1");
    app.add_option("--ez", ez, "holding field values (V/cm, repeatable)");
    app.add_option("--points", points, "eigensolver grid points");
    app.add_option("--delta1", d1, "single-photon detuning (units of omega)");
    app.add_option("--delta2", d2, "two-photon detuning (units of omega)");
    app.add_option("--sweep-min", sweep_min, "sweep lower bound");
    app.add_option("--sweep-max", sweep_max, "sweep upper bound");
    app.add_option("--sweep-points", sweep_points, "sweep sample count");
    app.add_option("--samples", samples, "trajectory sample count");
    app.add_option("--n-levels", n_levels, "number of bound states");
    app.add_option("--initial", initial, "trajectory input state (00|01|10|11)");
    app.add_option("--scheme", scheme, "coherent|two_step");
    app.add_flag("--coherences", coherences, "emit off-diagonal elements");

    struct Sub {
        const char* name;
        const char* experiment;
        const char* help;
    };
    const Sub subs[] = {
        {"spectrum", "spectrum", "Stark-shifted bound-state energies"},
        {"decay", "decay_table", "two-ripplon decay-rate ratios"},
        {"evolve", "trajectories", "master-equation populations"},
        {"compare", "scheme_compare", "coherent vs two-step transfer fidelity"},
        {"sweep-detuning", "detuning_sweep", "peak fidelity vs detuning"},
        {"gate", "gate_report", "CNOT fidelity report"},
        {"sweep-dissipation", "dissipation_sweep", "gate fidelity vs kappa1"},
    };
    std::string experiment;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->fallthrough(); // global flags may follow the subcommand
        sub->callback([&experiment, &s] { experiment = s.experiment; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        secnot::cli::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        cfg.experiment = experiment;
        if (app.count("--out")) cfg.out = out_path;
        if (app.count("--format")) cfg.format = format;
        if (app.count("--omega")) cfg.omega = omega;
        if (app.count("--kappa1")) cfg.kappa1 = kappa1;
        if (app.count("--kappa2-ratio")) cfg.kappa2_ratio = k2r;
        if (app.count("--kappa3-ratio")) cfg.kappa3_ratio = k3r;
        if (app.count("--ez")) cfg.ez = ez;
        if (app.count("--points")) cfg.grid_points = points;
        if (app.count("--delta1")) cfg.delta1 = d1;
        if (app.count("--delta2")) cfg.delta2 = d2;
        if (app.count("--sweep-min")) cfg.sweep_min = sweep_min;
        if (app.count("--sweep-max")) cfg.sweep_max = sweep_max;
        if (app.count("--sweep-points")) cfg.sweep_points = sweep_points;
        if (app.count("--samples")) cfg.samples = samples;
        if (app.count("--n-levels")) cfg.n_levels = n_levels;
        if (app.count("--initial")) cfg.initial = initial;
        if (app.count("--scheme")) cfg.scheme = scheme;
        if (app.count("--coherences")) cfg.coherences = coherences;

        const auto violations = secnot::cli::validate(cfg);
        if (!violations.empty()) {
            for (const auto& v : violations)
                std::cerr << "config error: " << v << "\n";
            return 1;
        }
        const std::string path = secnot::cli::run(cfg);
        std::cout << "wrote " << path << "\n";
        return 0;
    } catch (const secnot::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
