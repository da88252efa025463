#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtiling/cli.hpp"

// Thin flag layer over qtiling::run. A config file provides the base
// settings; any flag given on the command line overrides its field.

int main(int argc, char** argv) {
    CLI::App app{"quasi-tiling verifier: shift lemma, greedy covers, renders"};

    std::string config_path, command, out, format;
    long long d = 0, N = 0, r = 0, L = 0, D = 0, E = 0, window = 0;
    unsigned long long seed = 0, budget = 0, samples = 0;
    std::vector<long long> moduli, point;
    long long fiber_alphabet = 0;

    auto* config_opt = app.add_option("--config", config_path, "key: value configuration file");
    auto* command_opt = app.add_option("--command", command, "verify-shift-lemma | certify | render");
    auto* d_opt = app.add_option("--d", d, "dimension");
    auto* N_opt = app.add_option("--N", N, "generator radius");
    auto* r_opt = app.add_option("--r", r, "separation r");
    auto* L_opt = app.add_option("--L", L, "greedy cube radius L");
    auto* D_opt = app.add_option("--D", D, "tile radius D (with --E)");
    auto* E_opt = app.add_option("--E", E, "near-origin radius E (with --D)");
    auto* moduli_opt = app.add_option("--moduli", moduli, "odometer tower moduli")->delimiter(',');
    auto* fiber_opt = app.add_option("--fiber-alphabet", fiber_alphabet, "extension alphabet size");
    auto* point_opt = app.add_option("--point", point, "deepest-level residues")->delimiter(',');
    auto* window_opt = app.add_option("--window", window, "window radius W");
    auto* seed_opt = app.add_option("--seed", seed, "sampling seed");
    auto* out_opt = app.add_option("--out", out, "report path (default stdout)");
    auto* format_opt = app.add_option("--format", format, "text | svg");
    auto* budget_opt = app.add_option("--budget", budget, "enumeration candidate budget");
    auto* samples_opt = app.add_option("--samples", samples, "extension sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    qtiling::RunConfig cfg;
    try {
        if (config_opt->count()) cfg = qtiling::parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (command_opt->count()) cfg.command = command;
    if (d_opt->count()) cfg.d = static_cast<int>(d);
    if (N_opt->count()) cfg.N = N;
    if (r_opt->count()) cfg.r = r;
    if (L_opt->count()) cfg.L = L;
    if (D_opt->count()) cfg.D = D;
    if (E_opt->count()) cfg.E = E;
    if (moduli_opt->count()) cfg.moduli.assign(moduli.begin(), moduli.end());
    if (fiber_opt->count()) cfg.fiber_alphabet = static_cast<int>(fiber_alphabet);
    if (point_opt->count()) cfg.point.assign(point.begin(), point.end());
    if (window_opt->count()) cfg.window = window;
    if (seed_opt->count()) cfg.seed = seed;
    if (out_opt->count()) cfg.out = out;
    if (format_opt->count()) cfg.format = format;
    if (budget_opt->count()) cfg.budget = budget;
    if (samples_opt->count()) cfg.samples = samples;

    return qtiling::run(cfg, std::cout, std::cerr);
}
