#pragma once

#include "memsense/array.hpp"
#include "memsense/frame.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace memsense {

/// A rectangle translating at constant velocity over a uniform background.
struct SyntheticSceneSpec {
    ArrayGeometry geometry{64, 64};
    std::size_t object_rows = 16;
    std::size_t object_cols = 16;
    /// Top-left corner at frame 0. Unset: the trajectory is centred.
    std::optional<std::ptrdiff_t> start_row;
    std::optional<std::ptrdiff_t> start_col;
    std::ptrdiff_t velocity_rows = 0;
    std::ptrdiff_t velocity_cols = 2;
    std::size_t frames = 10;
    int foreground = 255;
    int background = 0;
    std::size_t delay = 1;

    /// Throws std::invalid_argument if the object ever leaves the frame.
    void validate() const;
};

struct Scene {
    std::vector<Frame> frames;
    /// ground_truth[k] pairs with frames[k + delay]: the symmetric difference
    /// of the object footprints at k + delay and k.
    std::vector<Mask> ground_truth;
};

Mask object_footprint(const SyntheticSceneSpec& spec, std::size_t t);
Scene generate_scene(const SyntheticSceneSpec& spec);

} // namespace memsense
