#pragma once

#include "memsense/array.hpp"
#include "memsense/config.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace memsense {

inline constexpr const char* kSummarySchemaVersion = "1";

struct FrameRecord {
    std::size_t frame_index = 0; ///< index of the current frame in the input sequence
    std::optional<double> iou;
    std::optional<double> pixel_error_rate;
    double threshold = 0.0;
    double variation_p = 0.0;
    std::uint64_t seed = 0;
    std::size_t detected_pixels = 0;
};

struct ExperimentSummary {
    ExperimentConfig config;
    std::vector<FrameRecord> frames;
    std::optional<double> mean_iou;
    std::optional<double> min_iou;
    std::optional<double> max_iou;
    CostReport costs;
};

/// Samples the array, differences the sequence (loaded or synthetic),
/// thresholds, filters, and scores. When config.output_dir is set, writes
/// difference_NNNN.pgm, mask_NNNN.pgm and summary.json there.
ExperimentSummary run_experiment(const ExperimentConfig& config);

nlohmann::json summary_json(const ExperimentSummary& summary);
/// Serialized form written to summary.json (indent 2, trailing newline).
std::string summary_text(const ExperimentSummary& summary);

struct MonteCarloLevel {
    double variation = 0.0;
    std::size_t runs = 0;
    double mean_iou = 0.0;
    double min_iou = 0.0;
    double max_iou = 0.0;
    std::vector<double> per_seed_iou; ///< mean IoU of each run, in seed order
};

/// Repeats run_experiment for seeds base.seed .. base.seed + seeds - 1 at
/// each variation level. Requires a synthetic scene; per-run files are not
/// written.
std::vector<MonteCarloLevel> run_montecarlo(const ExperimentConfig& base, std::span<const double> levels,
                                            std::size_t seeds);
nlohmann::json montecarlo_json(const ExperimentConfig& base, std::span<const MonteCarloLevel> levels);

/// CSV `v_in,v_a,v_o_ron,v_o_roff`, v_in = 0..1 V in `steps` equal steps,
/// nominal devices, six decimals.
std::string transfer_sweep_csv(const CircuitConfig& config, double v_r = 1.0, std::size_t steps = 10);

} // namespace memsense
