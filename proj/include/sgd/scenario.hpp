#pragma once

#include <string>
#include <vector>

#include "sgd/density.hpp"
#include "sgd/params.hpp"

namespace sgd {

// One figure-style run: parameter stack, field/qubit blocks and the
// evaluation request. Parsed from flat `section.key = value` text.
struct ScenarioConfig {
    std::string name = "run";
    std::string description;

    RawParams physical;

    std::string field_kind = "thermal";  // thermal|coherent|random_phase|fock|sg_phase|generic
    double field_temperature = 200.0;    // K (thermal)
    double field_abs_alpha = 0.0;
    double field_theta = 0.0;
    int field_n0 = 0;
    double field_abs_z = 0.0;
    double field_trap_gamma = 0.0;  // when > 0, z = cot(gamma/2) e^{i theta}
    std::string field_csv;          // generic matrix file

    double qubit_gamma = 1.5707963267948966;  // pi/2
    double qubit_phi = 0.0;

    std::string mode = "factored";     // factored|exact|oracle
    std::vector<double> times{0.0};    // units of 1/Omega
    std::string cut = "antidiagonal";  // antidiagonal|local_1|local_2|grid
    double grid_min = -2.4;            // units of |x01|
    double grid_max = 2.4;
    int grid_points = 241;
    std::string out_dir = "out";
    double tail_mass = 1e-12;
    bool strict = false;

    double oracle_dt = 1e-7;   // s
    int oracle_npoints = 4096;
    int oracle_stride = 8;
};

// Parse a config file into `base` (later keys override).
void apply_config_file(ScenarioConfig& base, const std::string& path);
ScenarioConfig parse_config_file(const std::string& path);

// Built-in presets fig1..fig9 reproducing the reference figures.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();
std::string preset_table();

struct RunResult {
    std::vector<std::string> output_files;
    std::vector<std::string> warnings;
    std::string manifest_path;
};

// Builds the state stack, evaluates every requested time, writes one CSV per
// time plus a JSON manifest with resolved parameters and measured residuals.
RunResult run(const ScenarioConfig& config);

// "0.3", "100", "0.5019115pi" -> radians or plain number; used for angles.
double parse_angle(const std::string& text);

} // namespace sgd
