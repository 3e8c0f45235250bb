#ifndef CREEPWAVE_OUTPUT_HPP
#define CREEPWAVE_OUTPUT_HPP

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "creepwave/common.hpp"
#include "creepwave/geometry.hpp"

namespace creepwave::output {

inline constexpr const char* version_string = "creepwave 1.0.0";

/// One table cell; doubles render with 17 significant digits in CSV and as
/// numbers in JSON.
using Cell = std::variant<double, long long, std::string>;

std::string format_g17(double v);

/// Deterministic result table: '#'-prefixed provenance lines, a column-name
/// line, then the rows. Byte-identical output for identical configuration.
struct OutputTable {
    std::vector<std::string> provenance; // rendered as "# <line>"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    std::string to_json() const; // array of column->value objects
};

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string command;

    double k = 1.0;
    double k_min = 0.0;
    double k_max = 0.0;
    int k_steps = 0; // > 0 selects the k-range form

    double radius = 1.0;
    double theta_min = 0.5;
    double theta_max = pi;
    int theta_steps = 32;

    int modes = 1;
    int tours = 0;
    std::string boundary = "dirichlet";
    std::string engine = "creeping"; // amplitude source: creeping | exact
    double calibration = 1.0;
    bool fit_calibration = false;
    int lmax = 0; // 0 = default_l_max
    double period_tolerance = 0.10;

    std::string out_path;
    std::string svg_path;
    int workers = 0; // 0 = hardware concurrency
    unsigned long long seed = 20040813ULL;

    void validate() const; // throws ConfigError
    std::vector<std::string> echo() const;
};

/// Flat key=value file ('#' comments, blank lines ignored). Keys use the
/// same spelling as the long command-line flags.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Static index partition over `n` items on `workers` threads (0 = all
/// cores); results must be written to independent slots.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

OutputTable run_modes(const RunConfig& cfg);
OutputTable run_amplitude(const RunConfig& cfg);

/// Calibration of the free diffraction-coefficient constant against the
/// exact oracle: the smooth (specular) background of |f_exact(k, pi)| is
/// removed by a cubic fit, and the remaining creeping oscillation is
/// least-squares matched to the interference predicted by the creeping
/// model with the specular reference phase e^{-2ikR}(-R/2).
struct CalibrationFit {
    double calibration = 1.0;        // fitted multiplier for Eq-79-style coefficients
    double rms_oscillation = 0.0;    // RMS of the detrended exact signal
    double relative_residual = 1.0;  // RMS misfit / RMS oscillation
};

CalibrationFit fit_calibration_backward(const std::vector<double>& ks, double R, int modes);

struct CompareResult {
    OutputTable table;
    bool pass = false;
    std::vector<std::string> summary;
};

CompareResult run_compare(const RunConfig& cfg);

struct RaytraceResult {
    std::string ray_export;        // both senses, export format
    std::string svg;
    std::vector<int> crossing_counts; // per path
};

RaytraceResult run_raytrace(const RunConfig& cfg);

/// Deterministic internal consistency battery. Prints one line per check,
/// returns the number of failures.
int run_selftest(const RunConfig& cfg, std::string& report);

/// Static SVG scene: obstacle circle, axial caustic, rays, crossing marks
/// (circles with class="cross").
std::string render_svg(const geometry::ObstacleScene& scene,
                       const std::vector<geometry::RayPath>& rays,
                       const std::vector<geometry::Vec3>& crossings);

} // namespace creepwave::output

#endif
