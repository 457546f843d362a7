#include "memsense/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memsense {

double pixel_to_voltage(int gray)
{
    if (gray < 0 || gray > 255)
        throw std::out_of_range("gray level " + std::to_string(gray) + " outside [0, 255]");
    return static_cast<double>(gray) / 255.0 * kPixelFullScale;
}

int voltage_to_pixel(double volts)
{
    const double gray = std::round(volts / kPixelFullScale * 255.0);
    return static_cast<int>(std::clamp(gray, 0.0, 255.0));
}

std::vector<Frame> dynamic_difference(std::span<const Frame> sequence, const ArrayArchitecture& arch,
                                      const CircuitConfig& config, std::size_t delay, unsigned threads)
{
    if (delay < 1)
        throw std::invalid_argument("dynamic_difference: delay must be at least one frame");
    if (sequence.size() <= delay)
        throw std::invalid_argument("dynamic_difference: need more than " + std::to_string(delay) +
                                    " frames, got " + std::to_string(sequence.size()));
    if (!arch.all_in_state(MemristorState::LowResistance))
        throw std::logic_error("dynamic_difference: all memristors must be programmed to Ron");

    std::vector<Frame> out;
    out.reserve(sequence.size() - delay);
    for (std::size_t t = delay; t < sequence.size(); ++t)
        out.push_back(process_frame_pair(arch, sequence[t - delay], sequence[t], config, threads));
    return out;
}

Frame static_mode(const Frame& background, const Frame& input, MemristorState state,
                  const ArrayArchitecture& arch, const CircuitConfig& config, unsigned threads)
{
    ArrayArchitecture programmed = arch;
    programmed.program_all(state);
    return process_frame_pair(programmed, background, input, config, threads);
}

namespace {

void check_window(std::size_t window)
{
    if (window != 3 && window != 5)
        throw std::invalid_argument("window must be 3 or 5, got " + std::to_string(window));
}

std::size_t replicate(std::size_t center, std::ptrdiff_t offset, std::size_t extent)
{
    const auto i = static_cast<std::ptrdiff_t>(center) + offset;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(extent) - 1));
}

} // namespace

Frame neighborhood_similarity(const Frame& frame, std::size_t window, const CircuitConfig& config)
{
    check_window(window);
    if (frame.width() < window || frame.height() < window)
        throw std::invalid_argument("neighborhood_similarity: frame smaller than window");
    config.validate();

    const auto device = config.nominal_device(MemristorState::LowResistance);
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    const double neighbours = static_cast<double>(window * window - 1);
    std::vector<double> out(frame.size());
    for (std::size_t r = 0; r < frame.height(); ++r) {
        for (std::size_t c = 0; c < frame.width(); ++c) {
            const double centre = frame(r, c);
            double sum = 0.0;
            for (std::ptrdiff_t dr = -half; dr <= half; ++dr)
                for (std::ptrdiff_t dc = -half; dc <= half; ++dc) {
                    if (dr == 0 && dc == 0)
                        continue;
                    const double v = frame(replicate(r, dr, frame.height()), replicate(c, dc, frame.width()));
                    sum += transfer({v, centre}, device, config);
                }
            out[r * frame.width() + c] = sum / neighbours;
        }
    }
    return Frame(frame.width(), frame.height(), {-config.v_dd, config.v_dd}, std::move(out));
}

double default_threshold(const CircuitConfig& config)
{
    return 0.5 * (1.0 + config.r2 / config.r1) * kPixelFullScale;
}

DetectionResult threshold_mask(const Frame& difference, double threshold)
{
    if (!(threshold >= 0.0))
        throw std::invalid_argument("threshold must be non-negative");
    Mask mask(difference.width(), difference.height());
    for (std::size_t r = 0; r < difference.height(); ++r)
        for (std::size_t c = 0; c < difference.width(); ++c)
            mask.set(r, c, std::abs(difference(r, c)) >= threshold);
    return DetectionResult{difference, std::move(mask), threshold, 0, std::nullopt};
}

Mask median_filter(const Mask& mask, std::size_t window)
{
    check_window(window);
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    const std::size_t majority = window * window / 2 + 1;
    Mask out(mask.width(), mask.height());
    for (std::size_t r = 0; r < mask.height(); ++r)
        for (std::size_t c = 0; c < mask.width(); ++c) {
            std::size_t votes = 0;
            for (std::ptrdiff_t dr = -half; dr <= half; ++dr)
                for (std::ptrdiff_t dc = -half; dc <= half; ++dc)
                    votes += mask(replicate(r, dr, mask.height()), replicate(c, dc, mask.width())) ? 1 : 0;
            out.set(r, c, votes >= majority);
        }
    return out;
}

Frame median_filter(const Frame& frame, std::size_t window)
{
    check_window(window);
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    std::vector<double> out(frame.size());
    std::vector<double> patch(window * window);
    for (std::size_t r = 0; r < frame.height(); ++r)
        for (std::size_t c = 0; c < frame.width(); ++c) {
            std::size_t k = 0;
            for (std::ptrdiff_t dr = -half; dr <= half; ++dr)
                for (std::ptrdiff_t dc = -half; dc <= half; ++dc)
                    patch[k++] = frame(replicate(r, dr, frame.height()), replicate(c, dc, frame.width()));
            auto mid = patch.begin() + static_cast<std::ptrdiff_t>(patch.size() / 2);
            std::nth_element(patch.begin(), mid, patch.end());
            out[r * frame.width() + c] = *mid;
        }
    return Frame(frame.width(), frame.height(), frame.range(), std::move(out));
}

DetectionResult filtered(DetectionResult result, std::size_t window)
{
    result.mask = median_filter(result.mask, window);
    result.filter_window = window;
    result.metrics.reset();
    return result;
}

namespace {

void check_same(const Mask& a, const Mask& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("mask geometry mismatch");
}

} // namespace

double iou(const Mask& mask, const Mask& ground_truth)
{
    check_same(mask, ground_truth);
    std::size_t inter = 0;
    std::size_t uni = 0;
    auto a = mask.bits();
    auto b = ground_truth.bits();
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] & b[i]);
        uni += (a[i] | b[i]);
    }
    if (uni == 0)
        return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double pixel_error_rate(const Mask& mask, const Mask& ground_truth)
{
    check_same(mask, ground_truth);
    std::size_t wrong = 0;
    auto a = mask.bits();
    auto b = ground_truth.bits();
    for (std::size_t i = 0; i < a.size(); ++i)
        wrong += (a[i] != b[i]) ? 1 : 0;
    return static_cast<double>(wrong) / static_cast<double>(a.size());
}

void score(DetectionResult& result, const Mask& ground_truth)
{
    result.metrics = DetectionMetrics{iou(result.mask, ground_truth), pixel_error_rate(result.mask, ground_truth)};
}

} // namespace memsense
