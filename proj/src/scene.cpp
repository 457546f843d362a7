#include "memsense/scene.hpp"

#include "memsense/pipeline.hpp"

#include <stdexcept>
#include <string>

namespace memsense {

namespace {

struct Axis {
    std::ptrdiff_t start;
    std::ptrdiff_t velocity;
};

std::ptrdiff_t centred_start(std::size_t extent, std::size_t object, std::ptrdiff_t velocity, std::size_t frames)
{
    const auto travel = velocity * static_cast<std::ptrdiff_t>(frames - 1);
    const auto span = static_cast<std::ptrdiff_t>(object) + (travel < 0 ? -travel : travel);
    const auto start = (static_cast<std::ptrdiff_t>(extent) - span) / 2;
    return travel < 0 ? start - travel : start;
}

Axis row_axis(const SyntheticSceneSpec& s)
{
    return {s.start_row.value_or(centred_start(s.geometry.n_rows, s.object_rows, s.velocity_rows, s.frames)),
            s.velocity_rows};
}

Axis col_axis(const SyntheticSceneSpec& s)
{
    return {s.start_col.value_or(centred_start(s.geometry.n_cols, s.object_cols, s.velocity_cols, s.frames)),
            s.velocity_cols};
}

std::ptrdiff_t position(Axis a, std::size_t t)
{
    return a.start + a.velocity * static_cast<std::ptrdiff_t>(t);
}

} // namespace

void SyntheticSceneSpec::validate() const
{
    geometry.validate();
    if (frames <= delay || delay < 1)
        throw std::invalid_argument("scene: need delay >= 1 and more frames than the delay");
    if (object_rows < 1 || object_cols < 1)
        throw std::invalid_argument("scene: object must be at least 1x1");
    if (foreground < 0 || foreground > 255 || background < 0 || background > 255)
        throw std::invalid_argument("scene: intensities must be in [0, 255]");
    const auto rows = row_axis(*this);
    const auto cols = col_axis(*this);
    for (std::size_t t : {std::size_t{0}, frames - 1}) {
        const auto r = position(rows, t);
        const auto c = position(cols, t);
        if (r < 0 || c < 0 || r + static_cast<std::ptrdiff_t>(object_rows) > static_cast<std::ptrdiff_t>(geometry.n_rows) ||
            c + static_cast<std::ptrdiff_t>(object_cols) > static_cast<std::ptrdiff_t>(geometry.n_cols))
            throw std::invalid_argument("scene: object leaves the frame at t=" + std::to_string(t));
    }
}

Mask object_footprint(const SyntheticSceneSpec& spec, std::size_t t)
{
    const auto r0 = static_cast<std::size_t>(position(row_axis(spec), t));
    const auto c0 = static_cast<std::size_t>(position(col_axis(spec), t));
    Mask m(spec.geometry.n_cols, spec.geometry.n_rows);
    for (std::size_t r = r0; r < r0 + spec.object_rows; ++r)
        for (std::size_t c = c0; c < c0 + spec.object_cols; ++c)
            m.set(r, c, true);
    return m;
}

Scene generate_scene(const SyntheticSceneSpec& spec)
{
    spec.validate();
    Scene scene;
    std::vector<Mask> footprints;
    const double fg = pixel_to_voltage(spec.foreground);
    const double bg = pixel_to_voltage(spec.background);
    for (std::size_t t = 0; t < spec.frames; ++t) {
        footprints.push_back(object_footprint(spec, t));
        const auto& fp = footprints.back();
        std::vector<double> values(fp.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = fp.bits()[i] ? fg : bg;
        scene.frames.emplace_back(spec.geometry.n_cols, spec.geometry.n_rows, kPixelRange, std::move(values));
    }
    for (std::size_t t = spec.delay; t < spec.frames; ++t) {
        Mask gt(spec.geometry.n_cols, spec.geometry.n_rows);
        const auto a = footprints[t].bits();
        const auto b = footprints[t - spec.delay].bits();
        for (std::size_t r = 0; r < gt.height(); ++r)
            for (std::size_t c = 0; c < gt.width(); ++c) {
                const std::size_t i = r * gt.width() + c;
                gt.set(r, c, a[i] != b[i]);
            }
        scene.ground_truth.push_back(std::move(gt));
    }
    return scene;
}

} // namespace memsense
