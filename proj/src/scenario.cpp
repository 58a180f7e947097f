#include "sgd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "sgd/coefficients.hpp"
#include "sgd/constants.hpp"
#include "sgd/csv_io.hpp"
#include "sgd/errors.hpp"
#include "sgd/field_state.hpp"
#include "sgd/kernels.hpp"
#include "sgd/oracle.hpp"
#include "sgd/parallel.hpp"

namespace sgd {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& key)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (trim(text.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad numeric value for " + key + ": '" + text + "'");
}

int parse_int(const std::string& text, const std::string& key)
{
    const double v = parse_double(text, key);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9) throw ConfigError(key + " must be an integer");
    return i;
}

bool parse_bool(const std::string& text, const std::string& key)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("bad boolean for " + key + ": '" + text + "'");
}

std::vector<double> parse_times(const std::string& text, const std::string& key)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        const double v = parse_double(tok, key);
        if (v < 0.0) throw ConfigError(key + ": times must be >= 0");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(key + ": no times given");
    return out;
}

std::string fmt_t(double t)
{
    std::ostringstream ss;
    ss << t;
    return ss.str();
}

} // namespace

double parse_angle(const std::string& text)
{
    std::string s = trim(text);
    if (s.size() >= 2) {
        std::string tail = s.substr(s.size() - 2);
        std::transform(tail.begin(), tail.end(), tail.begin(), ::tolower);
        if (tail == "pi") {
            std::string head = trim(s.substr(0, s.size() - 2));
            if (head.empty() || head == "+") return constants::pi;
            if (head == "-") return -constants::pi;
            return parse_double(head, "angle") * constants::pi;
        }
    }
    return parse_double(s, "angle");
}

void apply_config_file(ScenarioConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "name") cfg.name = value;
        else if (key == "description") cfg.description = value;
        else if (key == "physical.m") cfg.physical.m = parse_double(value, key);
        else if (key == "physical.epsilon") cfg.physical.epsilon = parse_double(value, key);
        else if (key == "physical.lambda") cfg.physical.lambda = parse_double(value, key);
        else if (key == "physical.dx0") cfg.physical.dx0 = parse_double(value, key);
        else if (key == "physical.x01") cfg.physical.x01 = parse_double(value, key);
        else if (key == "physical.x02") cfg.physical.x02 = parse_double(value, key);
        else if (key == "field.kind") cfg.field_kind = value;
        else if (key == "field.temperature") cfg.field_temperature = parse_double(value, key);
        else if (key == "field.abs_alpha") cfg.field_abs_alpha = parse_double(value, key);
        else if (key == "field.theta") cfg.field_theta = parse_angle(value);
        else if (key == "field.n0") cfg.field_n0 = parse_int(value, key);
        else if (key == "field.abs_z") cfg.field_abs_z = parse_double(value, key);
        else if (key == "field.trap_gamma") cfg.field_trap_gamma = parse_angle(value);
        else if (key == "field.csv") cfg.field_csv = value;
        else if (key == "qubit.gamma") cfg.qubit_gamma = parse_angle(value);
        else if (key == "qubit.phi") cfg.qubit_phi = parse_angle(value);
        else if (key == "eval.mode") cfg.mode = value;
        else if (key == "eval.times") cfg.times = parse_times(value, key);
        else if (key == "eval.cut") cfg.cut = value;
        else if (key == "eval.grid_min") cfg.grid_min = parse_double(value, key);
        else if (key == "eval.grid_max") cfg.grid_max = parse_double(value, key);
        else if (key == "eval.grid_points") cfg.grid_points = parse_int(value, key);
        else if (key == "eval.out") cfg.out_dir = value;
        else if (key == "eval.tail_mass") cfg.tail_mass = parse_double(value, key);
        else if (key == "eval.strict") cfg.strict = parse_bool(value, key);
        else if (key == "oracle.dt") cfg.oracle_dt = parse_double(value, key);
        else if (key == "oracle.npoints") cfg.oracle_npoints = parse_int(value, key);
        else if (key == "oracle.stride") cfg.oracle_stride = parse_int(value, key);
        else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

ScenarioConfig parse_config_file(const std::string& path)
{
    ScenarioConfig cfg;
    apply_config_file(cfg, path);
    return cfg;
}

namespace {

ScenarioConfig base_preset()
{
    ScenarioConfig c;
    c.physical = RawParams{};  // reference figure parameters
    c.qubit_gamma = constants::pi / 2.0;
    c.qubit_phi = 0.0;
    return c;
}

double trap_gamma_ref() { return 0.5019115 * constants::pi; }

} // namespace

ScenarioConfig preset(const std::string& name)
{
    ScenarioConfig c = base_preset();
    c.name = name;
    const double alpha_ref = std::sqrt(82.76);

    if (name == "fig1") {
        c.field_kind = "thermal";
        c.times = {0.0};
        c.cut = "grid";
        c.description = "initial density matrix, full (x,x') grid";
    } else if (name == "fig2") {
        c.field_kind = "thermal";
        c.times = {100.0, 1000.0};
        c.cut = "grid";
        c.description = "thermal field, T=200 K, full grid";
    } else if (name == "fig3") {
        c.field_kind = "thermal";
        c.times = {0.0, 3.0, 10.0, 100.0, 200.0, 500.0};
        c.cut = "antidiagonal";
        c.description = "thermal field, nonlocal coherences along x' = -x";
    } else if (name == "fig4") {
        c.field_kind = "fock";
        c.field_n0 = 83;
        c.times = {0.0, 5.0, 10.0, 50.0, 100.0, 200.0};
        c.cut = "antidiagonal";
        c.description = "Fock field n0=83, undamped coherences";
    } else if (name == "fig5") {
        c.field_kind = "coherent";
        c.field_abs_alpha = alpha_ref;
        c.times = {0.0, 10.0, 50.0, 100.0, 500.0, 1200.0};
        c.cut = "antidiagonal";
        c.description = "coherent field, trapping (theta+phi=0), Re part relevant";
    } else if (name == "fig6") {
        c.field_kind = "coherent";
        c.field_abs_alpha = alpha_ref;
        c.times = {0.3, 3.0, 10.0, 50.0, 100.0, 1200.0};
        c.cut = "antidiagonal";
        c.description = "coherent field, trapping, Im part relevant";
    } else if (name == "fig7") {
        c.field_kind = "sg_phase";
        c.field_trap_gamma = trap_gamma_ref();
        c.qubit_gamma = trap_gamma_ref();
        c.times = {0.3, 3.0, 10.0, 50.0, 100.0, 1200.0};
        c.cut = "antidiagonal";
        c.description = "phase-state field, exact trapping, Im part relevant";
    } else if (name == "fig8") {
        c.field_kind = "coherent";
        c.field_abs_alpha = alpha_ref;
        c.times = {0.0, 10.0, 50.0, 100.0, 500.0, 1000.0};
        c.cut = "local_1";
        c.description = "coherent field, trapping, local coherences (Re)";
    } else if (name == "fig9") {
        c.field_kind = "coherent";
        c.field_abs_alpha = alpha_ref;
        c.times = {1.0, 10.0, 50.0, 100.0, 500.0, 1000.0};
        c.cut = "local_1";
        c.description = "coherent field, trapping, local coherences (Im)";
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<std::string> preset_names()
{
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

std::string preset_table()
{
    std::ostringstream out;
    out << std::left << std::setw(6) << "name" << std::setw(34) << "field" << std::setw(14)
        << "cut" << std::setw(26) << "times (1/Omega)" << "description\n";
    for (const auto& name : preset_names()) {
        const ScenarioConfig c = preset(name);
        std::string field = c.field_kind;
        if (c.field_kind == "fock") field += "(n0=" + std::to_string(c.field_n0) + ")";
        if (c.field_kind == "thermal") {
            std::ostringstream f;
            f << "thermal(T=" << c.field_temperature << " K)";
            field = f.str();
        }
        if (c.field_kind == "coherent") {
            std::ostringstream f;
            f << "coherent(|a|^2=" << c.field_abs_alpha * c.field_abs_alpha << ")";
            field = f.str();
        }
        if (c.field_kind == "sg_phase") field = "sg_phase(trapping)";
        std::ostringstream times;
        for (std::size_t i = 0; i < c.times.size(); ++i)
            times << (i ? "," : "") << c.times[i];
        out << std::left << std::setw(6) << name << std::setw(34) << field << std::setw(14)
            << c.cut << std::setw(26) << times.str() << c.description << "\n";
    }
    return out.str();
}

namespace {

FieldState build_field(const ScenarioConfig& cfg, const PhysicalParams& phys)
{
    const std::string& k = cfg.field_kind;
    if (k == "thermal") return FieldState::thermal_from_temperature(cfg.field_temperature, phys.omega);
    if (k == "coherent") return FieldState::coherent(cfg.field_abs_alpha, cfg.field_theta);
    if (k == "random_phase")
        return FieldState::random_phase_coherent(cfg.field_abs_alpha);
    if (k == "fock") return FieldState::fock(cfg.field_n0);
    if (k == "sg_phase") {
        if (cfg.field_trap_gamma > 0.0)
            return FieldState::sg_phase_from_trapping(cfg.field_trap_gamma, cfg.field_theta);
        return FieldState::sg_phase(cfg.field_abs_z, cfg.field_theta);
    }
    if (k == "generic") {
        if (cfg.field_csv.empty()) throw ConfigError("field.kind = generic requires field.csv");
        return FieldState::generic_from_csv(cfg.field_csv);
    }
    throw ConfigError("unknown field.kind '" + k + "'");
}

SliceCut cut_from_name(const std::string& name)
{
    if (name == "antidiagonal") return SliceCut::antidiagonal;
    if (name == "local_1") return SliceCut::local_1;
    if (name == "local_2") return SliceCut::local_2;
    throw ConfigError("unknown eval.cut '" + name + "'");
}

struct GridStats {
    double hermiticity = 0.0;
    double min_diag = 0.0;
    double max_imag_diag = 0.0;
};

GridStats grid_stats(const DensityGrid& g)
{
    GridStats s;
    const std::size_t n = g.size();
    s.min_diag = g.at(0, 0).real();
    for (std::size_t i = 0; i < n; ++i) {
        s.min_diag = std::min(s.min_diag, g.at(i, i).real());
        s.max_imag_diag = std::max(s.max_imag_diag, std::abs(g.at(i, i).imag()));
        for (std::size_t j = i + 1; j < n; ++j)
            s.hermiticity = std::max(s.hermiticity, std::abs(g.at(i, j) - std::conj(g.at(j, i))));
    }
    return s;
}

} // namespace

RunResult run(const ScenarioConfig& cfg)
{
    RunResult result;
    nlohmann::json manifest;

    const PhysicalParams phys = derive_params(cfg.physical, cfg.strict);
    for (const auto& w : phys.regime_warnings) result.warnings.push_back(w);

    const FieldState field = build_field(cfg, phys);
    const QubitState qubit(cfg.qubit_gamma, cfg.qubit_phi);
    const int n_max = field.truncation_cutoff(cfg.tail_mass);
    const DiagonalCoefficients coeffs = diagonal(field, qubit, n_max, cfg.tail_mass);
    const DensityModel model(phys, coeffs, cfg.name);
    const RabiInfo rabi = rabi_and_horizon(phys, coeffs.mean_n);
    const PacketParams packets = model.packets();

    if (cfg.grid_points < 2) throw ConfigError("eval.grid_points must be >= 2");
    if (!(cfg.grid_max > cfg.grid_min)) throw ConfigError("eval.grid_max must exceed eval.grid_min");
    const auto axis = DensityModel::default_axis(cfg.grid_min, cfg.grid_max, cfg.grid_points);

    EvalMode mode;
    if (cfg.mode == "factored") mode = EvalMode::factored;
    else if (cfg.mode == "exact") mode = EvalMode::exact;
    else if (cfg.mode == "oracle") mode = EvalMode::oracle;
    else throw ConfigError("unknown eval.mode '" + cfg.mode + "'");

    std::filesystem::create_directories(cfg.out_dir);

    manifest["scenario"] = cfg.name;
    manifest["description"] = cfg.description;
    manifest["kernel"] = kernels::active_table().name;
    manifest["threads"] = max_threads();
    manifest["physical"] = {{"m", phys.m},     {"epsilon", phys.epsilon}, {"lambda", phys.lambda},
                            {"k", phys.k},     {"omega", phys.omega},     {"a0", phys.a0},
                            {"dx0", phys.dx0}, {"x01", phys.x01},         {"x02", phys.x02}};
    manifest["packets"] = {{"dp0", packets.dp0}, {"delta", packets.delta}};
    manifest["field"] = field.describe();
    manifest["qubit"] = {{"gamma", qubit.gamma}, {"phi", qubit.phi}};
    manifest["mean_n"] = coeffs.mean_n;
    manifest["Omega"] = rabi.Omega;
    manifest["T0_max"] = rabi.T0_max;
    manifest["n_max"] = coeffs.n_max;
    manifest["tail_mass"] = cfg.tail_mass;
    manifest["coeff_norm_residual"] = coeffs.norm_residual();
    manifest["mode"] = cfg.mode;
    manifest["cut"] = cfg.cut;
    manifest["grid"] = {{"min", cfg.grid_min}, {"max", cfg.grid_max}, {"points", cfg.grid_points}};
    manifest["times"] = cfg.times;
    manifest["outputs"] = nlohmann::json::array();

    for (const double t_units : cfg.times) {
        const double t = model.seconds_from_units(t_units);
        if (t > rabi.T0_max) {
            std::ostringstream w;
            w << "t = " << t_units << "/Omega = " << t << " s exceeds the validity horizon T0 = "
              << rabi.T0_max << " s; factorized results are extrapolations there";
            result.warnings.push_back(w.str());
        }

        const std::string path =
            (std::filesystem::path(cfg.out_dir) / (cfg.name + "_t" + fmt_t(t_units) + ".csv"))
                .string();
        nlohmann::json entry;
        entry["t_units"] = t_units;
        entry["t_seconds"] = t;
        entry["file"] = path;

        if (mode == EvalMode::oracle) {
            const oracle::GridSpec gs = oracle::GridSpec::around_packets(
                phys, packets, coeffs.n_max, t, cfg.oracle_npoints);
            const DensityGrid g = oracle::assemble_reduced(
                phys, packets, coeffs, gs, t, cfg.oracle_dt, cfg.oracle_stride,
                std::max(std::abs(cfg.grid_min), std::abs(cfg.grid_max)));
            DensityGrid named = g;
            named.scenario = cfg.name;
            io::write_grid_csv(named, path);
            const GridStats s = grid_stats(named);
            entry["hermiticity_residual"] = s.hermiticity;
            entry["min_diag"] = s.min_diag;
            entry["max_imag_diag"] = s.max_imag_diag;
        } else if (cfg.cut == "grid") {
            const DensityGrid g = model.grid(mode, axis, t_units);
            io::write_grid_csv(g, path);
            const GridStats s = grid_stats(g);
            entry["hermiticity_residual"] = s.hermiticity;
            entry["min_diag"] = s.min_diag;
            entry["max_imag_diag"] = s.max_imag_diag;
        } else {
            const DensitySlice s = model.slice(mode, cut_from_name(cfg.cut), axis, t_units);
            io::write_slice_csv(s, path);
            // Hermiticity fixed point: rho on the antidiagonal is real at x=0.
            if (s.cut == SliceCut::antidiagonal) {
                std::size_t i0 = 0;
                for (std::size_t i = 1; i < s.xs.size(); ++i)
                    if (std::abs(s.xs[i]) < std::abs(s.xs[i0])) i0 = i;
                entry["imag_at_center"] = s.values[i0].imag();
            }
        }
        result.output_files.push_back(path);
        manifest["outputs"].push_back(entry);
    }

    manifest["warnings"] = result.warnings;
    result.manifest_path =
        (std::filesystem::path(cfg.out_dir) / (cfg.name + "_manifest.json")).string();
    std::ofstream mout(result.manifest_path);
    if (!mout) throw ConfigError("cannot write manifest " + result.manifest_path);
    mout << manifest.dump(2) << "\n";

    return result;
}

} // namespace sgd
