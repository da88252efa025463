#ifndef QTILING_CLI_HPP
#define QTILING_CLI_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtiling/dad.hpp"
#include "qtiling/greedy.hpp"
#include "qtiling/lattice.hpp"
#include "qtiling/render.hpp"
#include "qtiling/system.hpp"
#include "qtiling/tiling.hpp"

// Front end plumbing: flat key-value configuration, the three commands,
// and the exit-code contract. 0 = success, 1 = a verification that ran to
// completion and found the mathematics violated (should never happen),
// 2 = usage or configuration error.

namespace qtiling {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<int> d;
    std::optional<Coord> N;
    std::optional<Coord> r;
    std::optional<Coord> L;
    std::optional<Coord> D;
    std::optional<Coord> E;
    std::vector<Coord> moduli;
    std::optional<int> fiber_alphabet;
    std::vector<Coord> point;
    std::optional<Coord> window;
    std::uint64_t seed = 0;
    std::string out;                 // empty = stdout
    std::string format = "text";
    std::optional<std::uint64_t> budget;
    std::uint64_t samples = 100;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline Coord parse_integer(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        Coord v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for " + key + ": '" + value + "'");
    }
}

inline std::vector<Coord> parse_integer_list(const std::string& value, const std::string& key) {
    std::vector<Coord> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_integer(trim(item), key));
    if (out.empty()) throw ConfigError("config: empty list for " + key);
    return out;
}

}  // namespace detail

/// "key: value" lines; '#' starts a comment; unknown keys are errors.
inline RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key: value'");
        const std::string key = detail::trim(line.substr(0, colon));
        const std::string value = detail::trim(line.substr(colon + 1));
        if (value.empty()) throw ConfigError("config: empty value for " + key);

        if (key == "command") cfg.command = value;
        else if (key == "d") cfg.d = static_cast<int>(detail::parse_integer(value, key));
        else if (key == "N") cfg.N = detail::parse_integer(value, key);
        else if (key == "r") cfg.r = detail::parse_integer(value, key);
        else if (key == "L") cfg.L = detail::parse_integer(value, key);
        else if (key == "D") cfg.D = detail::parse_integer(value, key);
        else if (key == "E") cfg.E = detail::parse_integer(value, key);
        else if (key == "moduli") cfg.moduli = detail::parse_integer_list(value, key);
        else if (key == "fiber_alphabet") cfg.fiber_alphabet = static_cast<int>(detail::parse_integer(value, key));
        else if (key == "point") cfg.point = detail::parse_integer_list(value, key);
        else if (key == "window") cfg.window = detail::parse_integer(value, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::parse_integer(value, key));
        else if (key == "out") cfg.out = value;
        else if (key == "format") cfg.format = value;
        else if (key == "budget") cfg.budget = static_cast<std::uint64_t>(detail::parse_integer(value, key));
        else if (key == "samples") cfg.samples = static_cast<std::uint64_t>(detail::parse_integer(value, key));
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    return parse_run_config(in);
}

namespace detail {

inline void write_report(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
    if (cfg.out.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output path " + cfg.out);
    file << text;
    if (!file) throw ConfigError("write failed for " + cfg.out);
}

inline int require_d(const RunConfig& cfg) {
    if (!cfg.d) throw ConfigError("config: d is required");
    return *cfg.d;
}

/// (r, D, E) from explicit values or from (r, L); both routes validated.
inline TilingParams tiling_params_of(const RunConfig& cfg) {
    if (!cfg.r) throw ConfigError("config: r is required");
    if (cfg.D && cfg.E) {
        TilingParams p{*cfg.r, *cfg.D, *cfg.E};
        p.validate();
        return p;
    }
    if (cfg.D || cfg.E) throw ConfigError("config: D and E must be given together");
    if (!cfg.L) throw ConfigError("config: either L or both D and E required");
    TilingParams p{*cfg.r, *cfg.L - *cfg.r, *cfg.L + *cfg.r};
    p.validate();
    return p;
}

/// Greedy parameters: defaults from N when r/L absent, explicit otherwise.
inline GreedyParams greedy_params_of(const RunConfig& cfg, int d, bool need_N) {
    const Coord N = cfg.N.value_or(0);
    if (need_N && N < 1) throw ConfigError("config: N >= 1 is required for this command");
    GreedyParams p;
    if (!cfg.r && !cfg.L) {
        if (N < 1) throw ConfigError("config: give N for default parameters, or r and L");
        p = default_params(N, d);
    } else {
        if (!cfg.r) throw ConfigError("config: r is required when L is given");
        p.N = N;
        p.r = *cfg.r;
        p.L = cfg.L ? *cfg.L : 3 * *cfg.r;
    }
    validate_greedy_params(p, d);
    return p;
}

inline OdometerSpec odometer_of(const RunConfig& cfg, int d) {
    if (cfg.moduli.empty()) throw ConfigError("config: moduli list is required");
    OdometerSpec spec{d, cfg.moduli};
    spec.validate();
    return spec;
}

}  // namespace detail

inline int run_verify_shift_lemma(const RunConfig& cfg, std::ostream& report_out, std::ostream&) {
    const int d = detail::require_d(cfg);
    if (d > 2) throw ConfigError("verify-shift-lemma: only d <= 2 supported");
    const TilingParams params = detail::tiling_params_of(cfg);
    const Coord W = cfg.window ? *cfg.window : params.D + 2 * params.E;
    EnumerationBudget budget;
    if (cfg.budget) budget.max_candidates = *cfg.budget;
    ShiftLemmaReport report = verify_shift_lemma(params, W, d, budget);
    detail::write_report(cfg, report.to_text(), report_out);
    return report.all_covered ? 0 : 1;
}

inline int run_certify(const RunConfig& cfg, std::ostream& report_out, std::ostream&) {
    const int d = detail::require_d(cfg);
    const OdometerSpec spec = detail::odometer_of(cfg, d);
    const GreedyParams params = detail::greedy_params_of(cfg, d, /*need_N=*/true);
    CertifyOptions options;
    options.seed = cfg.seed;
    options.fiber_samples = cfg.samples;
    Certificate cert;
    if (cfg.fiber_alphabet) {
        ExtensionSpec ext{spec, *cfg.fiber_alphabet};
        ext.validate();
        cert = certify(ext, params, options);
    } else {
        cert = certify(spec, params, options);
    }
    detail::write_report(cfg, cert.to_text(), report_out);
    return cert.pass ? 0 : 1;
}

inline int run_render(const RunConfig& cfg, std::ostream& report_out, std::ostream&) {
    const int d = detail::require_d(cfg);
    if (d > 2) throw ConfigError("render: only d <= 2 supported");
    const OdometerSpec spec = detail::odometer_of(cfg, d);
    const GreedyParams params = detail::greedy_params_of(cfg, d, /*need_N=*/false);
    LatticeVector residue = LatticeVector::zero(d);
    if (!cfg.point.empty()) {
        if (static_cast<int>(cfg.point.size()) != d) throw ConfigError("config: point needs d coordinates");
        for (int i = 0; i < d; ++i) residue[i] = cfg.point[static_cast<std::size_t>(i)];
    }
    const SystemPoint x = odometer_point(spec, residue);
    const Coord W = cfg.window ? *cfg.window : separated_partition(spec, params.L).modulus;
    std::string text;
    if (cfg.format == "text") text = render_text(spec, x, params, W);
    else if (cfg.format == "svg") text = render_svg(spec, x, params, W);
    else throw ConfigError("config: format must be text or svg");
    detail::write_report(cfg, text, report_out);
    return 0;
}

/// Dispatch with the exit-code contract. Exceptions are usage/config
/// errors (2); a verdict of "mathematics violated" is a plain return (1).
inline int run(const RunConfig& cfg, std::ostream& report_out, std::ostream& diag) {
    try {
        if (cfg.command == "verify-shift-lemma") return run_verify_shift_lemma(cfg, report_out, diag);
        if (cfg.command == "certify") return run_certify(cfg, report_out, diag);
        if (cfg.command == "render") return run_render(cfg, report_out, diag);
        throw ConfigError(cfg.command.empty() ? "config: command is required"
                                              : "config: unknown command '" + cfg.command + "'");
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qtiling

#endif  // QTILING_CLI_HPP
