#include "memsense/experiment.hpp"

#include "memsense/pgm.hpp"
#include "memsense/pipeline.hpp"
#include "memsense/scene.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace memsense {

namespace {

std::string indexed_name(const char* stem, std::size_t index)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04zu.pgm", stem, index);
    return buf;
}

} // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config)
{
    config.validate();

    std::vector<Frame> frames;
    std::vector<Mask> truth;
    if (config.inputs.empty()) {
        auto scene = generate_scene(config.scene);
        frames = std::move(scene.frames);
        truth = std::move(scene.ground_truth);
    } else {
        frames = load_sequence(config.inputs);
    }

    const ArrayGeometry geometry{frames.front().height(), frames.front().width()};
    ArrayArchitecture arch(config.architecture, geometry, config.circuit, config.variation, config.seed,
                           config.costs);
    arch.program_all(MemristorState::LowResistance);

    const auto differences = dynamic_difference(frames, arch, config.circuit, config.delay, config.threads);
    const double threshold = config.effective_threshold();
    const std::size_t window = filter_window(config.filter);

    if (!config.output_dir.empty())
        std::filesystem::create_directories(config.output_dir);

    ExperimentSummary summary;
    summary.config = config;
    summary.costs = cost_report(arch);
    for (std::size_t k = 0; k < differences.size(); ++k) {
        auto result = threshold_mask(differences[k], threshold);
        if (window != 0)
            result = filtered(std::move(result), window);
        if (!truth.empty())
            score(result, truth[k]);

        FrameRecord rec;
        rec.frame_index = k + config.delay;
        rec.threshold = threshold;
        rec.variation_p = config.variation;
        rec.seed = config.seed;
        rec.detected_pixels = result.mask.count();
        if (result.metrics) {
            rec.iou = result.metrics->iou;
            rec.pixel_error_rate = result.metrics->pixel_error_rate;
        }
        summary.frames.push_back(rec);

        if (!config.output_dir.empty()) {
            save_frame(result.difference, config.output_dir / indexed_name("difference", rec.frame_index),
                       SaveMode::SignedDifference);
            save_frame(result.mask, config.output_dir / indexed_name("mask", rec.frame_index));
        }
    }

    if (!truth.empty()) {
        std::vector<double> ious;
        for (const auto& f : summary.frames)
            ious.push_back(*f.iou);
        summary.mean_iou = std::accumulate(ious.begin(), ious.end(), 0.0) / static_cast<double>(ious.size());
        summary.min_iou = *std::min_element(ious.begin(), ious.end());
        summary.max_iou = *std::max_element(ious.begin(), ious.end());
    }

    if (!config.output_dir.empty()) {
        std::ofstream f(config.output_dir / "summary.json", std::ios::binary | std::ios::trunc);
        f << summary_text(summary);
        if (!f)
            throw std::runtime_error((config.output_dir / "summary.json").string() + ": write failed");
    }
    return summary;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json config_json(const ExperimentConfig& c)
{
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& p : c.inputs)
        inputs.push_back(p.string());
    nlohmann::json j{
        {"architecture", std::string(to_string(c.architecture))},
        {"variation_p", c.variation},
        {"seed", c.seed},
        {"threshold", c.effective_threshold()},
        {"delay", c.delay},
        {"filter", std::string(to_string(c.filter))},
        {"circuit",
         {{"r1", c.circuit.r1},
          {"r2", c.circuit.r2},
          {"r3", c.circuit.r3},
          {"r4", c.circuit.r4},
          {"v_dd", c.circuit.v_dd},
          {"r_on", c.circuit.r_on_nominal},
          {"r_off", c.circuit.r_off_nominal}}},
        {"inputs", inputs},
    };
    if (c.inputs.empty()) {
        const auto& s = c.scene;
        j["scene"] = {{"rows", s.geometry.n_rows},
                      {"cols", s.geometry.n_cols},
                      {"object_rows", s.object_rows},
                      {"object_cols", s.object_cols},
                      {"velocity_rows", s.velocity_rows},
                      {"velocity_cols", s.velocity_cols},
                      {"frames", s.frames},
                      {"foreground", s.foreground},
                      {"background", s.background}};
    }
    return j;
}

} // namespace

nlohmann::json summary_json(const ExperimentSummary& summary)
{
    nlohmann::json frames = nlohmann::json::array();
    for (const auto& f : summary.frames)
        frames.push_back({{"frame_index", f.frame_index},
                          {"iou", optional_number(f.iou)},
                          {"pixel_error_rate", optional_number(f.pixel_error_rate)},
                          {"threshold", f.threshold},
                          {"variation_p", f.variation_p},
                          {"seed", f.seed},
                          {"detected_pixels", f.detected_pixels}});
    return {{"schema_version", kSummarySchemaVersion},
            {"config", config_json(summary.config)},
            {"costs", summary.costs},
            {"frames", frames},
            {"mean_iou", optional_number(summary.mean_iou)},
            {"min_iou", optional_number(summary.min_iou)},
            {"max_iou", optional_number(summary.max_iou)}};
}

std::string summary_text(const ExperimentSummary& summary)
{
    return summary_json(summary).dump(2) + "\n";
}

std::vector<MonteCarloLevel> run_montecarlo(const ExperimentConfig& base, std::span<const double> levels,
                                            std::size_t seeds)
{
    if (!base.inputs.empty())
        throw std::invalid_argument("montecarlo needs a synthetic scene for ground truth");
    if (seeds == 0)
        throw std::invalid_argument("montecarlo needs at least one seed");
    std::vector<MonteCarloLevel> out;
    for (double p : levels) {
        MonteCarloLevel level;
        level.variation = p;
        level.runs = seeds;
        for (std::size_t s = 0; s < seeds; ++s) {
            ExperimentConfig cfg = base;
            cfg.variation = p;
            cfg.seed = base.seed + s;
            cfg.output_dir.clear();
            level.per_seed_iou.push_back(*run_experiment(cfg).mean_iou);
        }
        const auto& v = level.per_seed_iou;
        level.mean_iou = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        level.min_iou = *std::min_element(v.begin(), v.end());
        level.max_iou = *std::max_element(v.begin(), v.end());
        out.push_back(std::move(level));
    }
    return out;
}

nlohmann::json montecarlo_json(const ExperimentConfig& base, std::span<const MonteCarloLevel> levels)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : levels)
        arr.push_back({{"variation_p", l.variation},
                       {"runs", l.runs},
                       {"mean_iou", l.mean_iou},
                       {"min_iou", l.min_iou},
                       {"max_iou", l.max_iou},
                       {"per_seed_iou", l.per_seed_iou}});
    return {{"schema_version", kSummarySchemaVersion},
            {"config", config_json(base)},
            {"first_seed", base.seed},
            {"levels", arr}};
}

std::string transfer_sweep_csv(const CircuitConfig& config, double v_r, std::size_t steps)
{
    config.validate();
    if (steps == 0)
        throw std::invalid_argument("sweep needs at least one step");
    const auto ron = config.nominal_device(MemristorState::LowResistance);
    const auto roff = config.nominal_device(MemristorState::HighResistance);
    std::string out = "v_in,v_a,v_o_ron,v_o_roff\n";
    char line[128];
    for (std::size_t k = 0; k <= steps; ++k) {
        const double v_in = kPixelFullScale * static_cast<double>(k) / static_cast<double>(steps);
        std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f\n", v_in, amplifier_stage(v_in, config),
                      transfer({v_in, v_r}, ron, config), transfer({v_in, v_r}, roff, config));
        out += line;
    }
    return out;
}

} // namespace memsense
