// memsense: command-line driver for the memristive frame-differencing simulator.
#include "memsense/array.hpp"
#include "memsense/config.hpp"
#include "memsense/experiment.hpp"
#include "memsense/pgm.hpp"
#include "memsense/pipeline.hpp"
#include "memsense/scene.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace memsense;

namespace {

/// Every config key as a `--key` flag on one subcommand, plus --config.
struct ConfigFlags {
    std::string config_file;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void attach(CLI::App* app)
    {
        app->add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
        for (auto key : config_keys()) {
            const std::string name(key);
            options[name] = app->add_option("--" + name, values[name]);
        }
        options["arch"]->check(CLI::IsMember({"parallel", "column"}));
        options["filter"]->check(CLI::IsMember({"none", "median3", "median5"}));
    }

    /// Defaults <- MEMSENSE_SEED <- config file <- flags.
    ExperimentConfig resolve() const
    {
        ExperimentConfig cfg;
        if (const char* env = std::getenv("MEMSENSE_SEED"); env && *env)
            apply_key_values(cfg, {{"seed", env}});
        if (!config_file.empty())
            apply_key_values(cfg, read_key_values(config_file));
        KeyValues flags;
        for (const auto& [name, opt] : options)
            if (opt->count() > 0)
                flags[name] = values.at(name);
        apply_key_values(cfg, flags);
        return cfg;
    }
};

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f)
        throw std::runtime_error(path.string() + ": write failed");
}

std::string cost_table(const CostReport& r)
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "architecture   %s\n"
                  "geometry       %zu x %zu\n"
                  "circuits       %zu\n"
                  "power          %.6g W\n"
                  "area           %.6g um^2\n"
                  "frame latency  %.6g s\n"
                  "reduction      %.4f %%\n",
                  std::string(to_string(r.architecture)).c_str(), r.n, r.m, r.circuits, r.power_w, r.area_um2,
                  r.latency_s, r.reduction_percent);
    return buf;
}

int cmd_simulate(const ConfigFlags& flags)
{
    const auto cfg = flags.resolve();
    const auto summary = run_experiment(cfg);
    if (cfg.output_dir.empty()) {
        std::cout << summary_text(summary);
    } else {
        std::cout << "wrote " << summary.frames.size() << " frame pairs to " << cfg.output_dir.string() << "\n";
        if (summary.mean_iou)
            std::printf("mean IoU %.6f (min %.6f, max %.6f)\n", *summary.mean_iou, *summary.min_iou,
                        *summary.max_iou);
    }
    return 0;
}

int cmd_scene(const ConfigFlags& flags)
{
    const auto cfg = flags.resolve();
    if (cfg.output_dir.empty())
        throw std::invalid_argument("scene: --out is required");
    auto spec = cfg.scene;
    spec.delay = cfg.delay;
    const auto scene = generate_scene(spec);
    std::filesystem::create_directories(cfg.output_dir);
    char name[64];
    for (std::size_t t = 0; t < scene.frames.size(); ++t) {
        std::snprintf(name, sizeof name, "frame_%04zu.pgm", t);
        save_frame(scene.frames[t], cfg.output_dir / name, SaveMode::Raw);
    }
    for (std::size_t k = 0; k < scene.ground_truth.size(); ++k) {
        std::snprintf(name, sizeof name, "truth_%04zu.pgm", k + spec.delay);
        save_frame(scene.ground_truth[k], cfg.output_dir / name);
    }
    std::cout << "wrote " << scene.frames.size() << " frames to " << cfg.output_dir.string() << "\n";
    return 0;
}

int cmd_sweep(const ConfigFlags& flags, double v_r, std::size_t steps)
{
    const auto cfg = flags.resolve();
    const auto csv = transfer_sweep_csv(cfg.circuit, v_r, steps);
    if (cfg.output_dir.empty()) {
        std::cout << csv;
    } else {
        std::filesystem::create_directories(cfg.output_dir);
        write_text(cfg.output_dir / "sweep.csv", csv);
    }
    return 0;
}

int cmd_report(const ConfigFlags& flags, const std::string& format)
{
    const auto cfg = flags.resolve();
    const ArrayArchitecture arch(cfg.architecture, cfg.scene.geometry, cfg.circuit, 0.0, 0, cfg.costs);
    const auto report = cost_report(arch);
    const nlohmann::json j = report;
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << cost_table(report);
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        write_text(cfg.output_dir / "report.json", j.dump(2) + "\n");
    }
    return 0;
}

int cmd_montecarlo(const ConfigFlags& flags, const std::vector<double>& levels, std::size_t seeds)
{
    const auto cfg = flags.resolve();
    const auto result = run_montecarlo(cfg, levels, seeds);
    const auto text = montecarlo_json(cfg, result).dump(2) + "\n";
    if (cfg.output_dir.empty()) {
        std::cout << text;
        return 0;
    }
    std::filesystem::create_directories(cfg.output_dir);
    write_text(cfg.output_dir / "montecarlo.json", text);
    std::printf("%-10s %6s %10s %10s %10s\n", "variation", "runs", "mean_iou", "min_iou", "max_iou");
    for (const auto& l : result)
        std::printf("%-10.3f %6zu %10.6f %10.6f %10.6f\n", l.variation, l.runs, l.mean_iou, l.min_iou, l.max_iou);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Behavioral simulator for memristive analog pixel frame differencing"};
    app.require_subcommand(1);

    ConfigFlags simulate_flags, scene_flags, sweep_flags, report_flags, mc_flags;

    auto* simulate = app.add_subcommand("simulate", "run one detection experiment");
    simulate_flags.attach(simulate);

    auto* scene = app.add_subcommand("scene", "write a synthetic moving-object sequence as PGM");
    scene_flags.attach(scene);

    double v_r = 1.0;
    std::size_t steps = 10;
    auto* sweep = app.add_subcommand("sweep", "transfer curve CSV over V_in for both memristor states");
    sweep_flags.attach(sweep);
    sweep->add_option("--vr", v_r, "reference voltage in volts")->capture_default_str();
    sweep->add_option("--steps", steps, "number of V_in steps over [0, 1] V")->capture_default_str();

    std::string format = "table";
    auto* report = app.add_subcommand("report", "circuit count, power, area and latency of an array");
    report_flags.attach(report);
    report->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

    std::vector<double> levels{0.1, 0.3, 0.5};
    std::size_t seeds = 20;
    auto* montecarlo = app.add_subcommand("montecarlo", "IoU statistics over seeds per variation level");
    mc_flags.attach(montecarlo);
    montecarlo->add_option("--levels", levels, "variation fractions")->delimiter(',')->capture_default_str();
    montecarlo->add_option("--seeds", seeds, "runs per level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*simulate)
            return cmd_simulate(simulate_flags);
        if (*scene)
            return cmd_scene(scene_flags);
        if (*sweep)
            return cmd_sweep(sweep_flags, v_r, steps);
        if (*report)
            return cmd_report(report_flags, format);
        if (*montecarlo)
            return cmd_montecarlo(mc_flags, levels, seeds);
    } catch (const std::exception& e) {
        std::cerr << "memsense: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
