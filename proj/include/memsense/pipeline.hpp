#pragma once

#include "memsense/array.hpp"
#include "memsense/circuit.hpp"
#include "memsense/frame.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace memsense {

/// Full-scale pixel voltage; white maps here.
inline constexpr double kPixelFullScale = 1.0;
inline constexpr VoltageRange kPixelRange{0.0, kPixelFullScale};

/// gray / 255 * 1 V. Throws std::out_of_range outside [0, 255].
double pixel_to_voltage(int gray);
/// Nearest gray level, clamped to [0, 255].
int voltage_to_pixel(double volts);

/// out[k] compares sequence[k + delay] (current) against sequence[k]
/// (reference). Every device must be programmed to LowResistance.
std::vector<Frame> dynamic_difference(std::span<const Frame> sequence, const ArrayArchitecture& arch,
                                      const CircuitConfig& config, std::size_t delay = 1,
                                      unsigned threads = 1);

/// Background goes to V_r. HighResistance preserves it, LowResistance subtracts.
Frame static_mode(const Frame& background, const Frame& input, MemristorState state,
                  const ArrayArchitecture& arch, const CircuitConfig& config, unsigned threads = 1);

/// Mean over the window's neighbours (centre excluded) of transfer(v_in =
/// neighbour, v_r = centre) through a nominal Ron device. Replicate padding.
Frame neighborhood_similarity(const Frame& frame, std::size_t window, const CircuitConfig& config);

struct DetectionMetrics {
    double iou = 0.0;
    double pixel_error_rate = 0.0;
};

/// `mask` is |difference| >= threshold, optionally followed by a median of
/// size `filter_window` (0 when unfiltered).
struct DetectionResult {
    Frame difference;
    Mask mask;
    double threshold;
    std::size_t filter_window = 0;
    std::optional<DetectionMetrics> metrics;
};

/// Half of the full-scale Ron difference: 0.5 * (1 + r2/r1) * 1 V.
double default_threshold(const CircuitConfig& config);

DetectionResult threshold_mask(const Frame& difference, double threshold);

/// Window must be 3 or 5; replicate padding. On masks this is a majority vote.
Mask median_filter(const Mask& mask, std::size_t window);
Frame median_filter(const Frame& frame, std::size_t window);

/// Replaces the result's mask with its median-filtered version.
DetectionResult filtered(DetectionResult result, std::size_t window);

/// |A ∩ B| / |A ∪ B|, 1.0 when both are empty.
double iou(const Mask& mask, const Mask& ground_truth);
double pixel_error_rate(const Mask& mask, const Mask& ground_truth);

/// Fills result.metrics against `ground_truth`.
void score(DetectionResult& result, const Mask& ground_truth);

} // namespace memsense
