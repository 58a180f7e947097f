#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sgd/scenario.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"optical Stern-Gerlach spatial decoherence: reduced-density scenario runner"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "evaluate a scenario and write CSV datasets");
    std::string preset_name, config_path, mode_override, out_override;
    bool strict = false;
    run_cmd->add_option("--preset", preset_name, "built-in preset (fig1..fig9)");
    run_cmd->add_option("--config", config_path, "config file of `key = value` lines");
    run_cmd->add_option("--mode", mode_override, "override eval.mode: factored|exact|oracle");
    run_cmd->add_option("--out", out_override, "override output directory");
    run_cmd->add_flag("--strict", strict, "linearization-regime guards become errors");

    auto* list_cmd = app.add_subcommand("list-presets", "print the preset table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            std::cout << sgd::preset_table();
            return 0;
        }

        sgd::ScenarioConfig cfg;
        if (!preset_name.empty()) {
            cfg = sgd::preset(preset_name);
        } else if (config_path.empty()) {
            std::cerr << "run: need --preset and/or --config\n";
            return 2;
        }
        if (!config_path.empty()) sgd::apply_config_file(cfg, config_path);
        if (!mode_override.empty()) cfg.mode = mode_override;
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (strict) cfg.strict = true;

        const sgd::RunResult res = sgd::run(cfg);
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& f : res.output_files) std::cout << f << "\n";
        std::cout << res.manifest_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
