#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "creepwave/errors.hpp"
#include "creepwave/output.hpp"

namespace {

using creepwave::output::RunConfig;

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_comparison = 4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw creepwave::ConfigError("cannot open output file '" + path + "'");
    out << content;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit_table(const creepwave::output::OutputTable& table, const std::string& out_path) {
    const std::string text = ends_with(out_path, ".json") ? table.to_json() : table.to_csv();
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

void add_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key=value configuration file");
    cmd->add_option("--k", cfg.k, "wavenumber");
    cmd->add_option("--k-min", cfg.k_min, "wavenumber range start");
    cmd->add_option("--k-max", cfg.k_max, "wavenumber range end");
    cmd->add_option("--k-steps", cfg.k_steps, "points in the wavenumber range");
    cmd->add_option("--radius", cfg.radius, "obstacle radius");
    cmd->add_option("--theta-min", cfg.theta_min, "scattering angle range start (radians)");
    cmd->add_option("--theta-max", cfg.theta_max, "scattering angle range end (radians)");
    cmd->add_option("--theta-steps", cfg.theta_steps, "points in the angle range");
    cmd->add_option("--modes", cfg.modes, "number of creeping modes");
    cmd->add_option("--tours", cfg.tours, "full tours around the obstacle");
    cmd->add_option("--calibration", cfg.calibration, "diffraction-coefficient calibration");
    cmd->add_option("--engine", cfg.engine, "amplitude source: creeping (default) or exact");
    cmd->add_flag("--fit-calibration", cfg.fit_calibration,
                  "fit the calibration against the exact backward amplitude");
    cmd->add_option("--lmax", cfg.lmax, "partial-wave truncation override");
    cmd->add_option("--period-tol", cfg.period_tolerance, "interference-period tolerance");
    cmd->add_option("--out", cfg.out_path, "output path (.csv or .json; stdout if empty)");
    cmd->add_option("--svg", cfg.svg_path, "SVG output path (raytrace)");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
    cmd->add_option("--seed", cfg.seed, "seed for randomized self checks");
}

} // namespace

int main(int argc, char** argv) {
    try {
        RunConfig cfg;
        if (const char* env_workers = std::getenv("CREEPWAVE_WORKERS"))
            cfg.workers = std::atoi(env_workers);

        // precedence: defaults/env < config file < command-line flags,
        // so the file is located and applied before the full parse
        for (int i = 1; i < argc; ++i) {
            if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
                creepwave::output::apply_config_file(cfg, argv[i + 1]);
            else if (std::strncmp(argv[i], "--config=", 9) == 0)
                creepwave::output::apply_config_file(cfg, argv[i] + 9);
        }

        CLI::App app{"creeping-wave diffraction toolkit"};
        app.require_subcommand(1);
        std::string config_path;
        for (const char* name : {"modes", "amplitude", "compare", "raytrace", "selftest"})
            add_flags(app.add_subcommand(name), cfg, config_path);

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return app.exit(e); // --help
            std::cerr << "config error: " << e.what() << "\n";
            return exit_config;
        }

        const std::string command = app.get_subcommands().front()->get_name();
        if (!cfg.command.empty() && cfg.command != command)
            throw creepwave::ConfigError("config: command in file ('" + cfg.command +
                                         "') conflicts with subcommand '" + command + "'");
        cfg.command = command;

        using namespace creepwave::output;
        if (command == "modes") {
            emit_table(run_modes(cfg), cfg.out_path);
        } else if (command == "amplitude") {
            emit_table(run_amplitude(cfg), cfg.out_path);
        } else if (command == "compare") {
            const CompareResult res = run_compare(cfg);
            emit_table(res.table, cfg.out_path);
            for (const auto& line : res.summary) std::cerr << line << "\n";
            if (!res.pass) return exit_comparison;
        } else if (command == "raytrace") {
            const RaytraceResult res = run_raytrace(cfg);
            if (cfg.out_path.empty())
                std::cout << res.ray_export;
            else
                write_file(cfg.out_path, res.ray_export);
            if (!cfg.svg_path.empty()) write_file(cfg.svg_path, res.svg);
        } else if (command == "selftest") {
            std::string report;
            const int failures = run_selftest(cfg, report);
            std::cout << report;
            if (failures > 0) return exit_numerical;
        }
        return exit_ok;
    } catch (const creepwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const creepwave::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}
