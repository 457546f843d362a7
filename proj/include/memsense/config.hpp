#pragma once

#include "memsense/array.hpp"
#include "memsense/circuit.hpp"
#include "memsense/scene.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace memsense {

enum class FilterKind { None, Median3, Median5 };

std::string_view to_string(FilterKind kind);
/// Accepts "none", "median3", "median5".
FilterKind parse_filter(std::string_view name);
std::size_t filter_window(FilterKind kind);

struct ExperimentConfig {
    ArchitectureKind architecture = ArchitectureKind::PixelParallel;
    double variation = 0.0;
    std::uint64_t seed = 0;
    /// Unset: default_threshold(circuit).
    std::optional<double> threshold;
    std::size_t delay = 1;
    FilterKind filter = FilterKind::None;
    CircuitConfig circuit;
    CostParameters costs;
    /// Geometry lives in scene.geometry; loaded inputs override it.
    SyntheticSceneSpec scene;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path output_dir;
    /// Not part of the result; outputs are identical for any value.
    unsigned threads = 1;

    double effective_threshold() const;
    void validate() const;
};

/// Flat `key = value` pairs; later entries win.
using KeyValues = std::map<std::string, std::string, std::less<>>;

/// One `key = value` per line, `#` starts a comment. Throws
/// std::invalid_argument naming `source` and the line on malformed input.
KeyValues parse_key_values(std::istream& in, const std::string& source);
KeyValues read_key_values(const std::filesystem::path& path);

/// Every key accepted by apply_key_values, in a stable order.
const std::vector<std::string_view>& config_keys();

/// Applies known keys to `config`; unknown keys or bad values throw.
void apply_key_values(ExperimentConfig& config, const KeyValues& values);

} // namespace memsense
