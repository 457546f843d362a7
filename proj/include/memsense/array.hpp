#pragma once

#include "memsense/circuit.hpp"
#include "memsense/device.hpp"
#include "memsense/frame.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace memsense {

enum class ArchitectureKind { PixelParallel, ColumnSequential };

std::string_view to_string(ArchitectureKind kind);
/// Accepts "parallel" or "column".
ArchitectureKind parse_architecture(std::string_view name);

struct ArrayGeometry {
    std::size_t n_rows = 1;
    std::size_t n_cols = 1;

    void validate() const;
    std::size_t pixels() const { return n_rows * n_cols; }
};

/// Per-circuit figures of the 180 nm layout plus the configurable settle time.
struct CostParameters {
    double per_circuit_power_w = 96.64e-3;
    double per_circuit_area_um2 = 531.66;
    double row_settle_time_s = 1e-6;
};

/// Ideal sample-and-hold for one column of reference voltages.
class AnalogRowMemory {
public:
    explicit AnalogRowMemory(std::size_t length);

    void write(std::span<const double> values);
    double read(std::size_t index) const;

    bool valid() const { return valid_; }
    std::size_t length() const { return stored_.size(); }

private:
    std::vector<double> stored_;
    bool valid_ = false;
};

/// Pixel array wired either with one circuit per pixel or with one shared
/// circuit per row that scans the columns through an AnalogRowMemory.
class ArrayArchitecture {
public:
    /// Samples one mismatch per device from (seed, device index). Devices
    /// start unprogrammed; call program_all before processing.
    ArrayArchitecture(ArchitectureKind kind, ArrayGeometry geometry, const CircuitConfig& config,
                      double variation_fraction, std::uint64_t seed, CostParameters costs = {});

    /// Explicit device list; counts as programmed.
    ArrayArchitecture(ArchitectureKind kind, ArrayGeometry geometry, std::vector<MemristorDevice> devices,
                      CostParameters costs = {});

    static std::size_t devices_required(ArchitectureKind kind, ArrayGeometry geometry);

    ArchitectureKind kind() const { return kind_; }
    ArrayGeometry geometry() const { return geometry_; }
    const CostParameters& costs() const { return costs_; }
    std::span<const MemristorDevice> devices() const { return devices_; }
    bool programmed() const { return programmed_; }

    const MemristorDevice& device_for(std::size_t row, std::size_t col) const;

    void program_all(MemristorState state);
    bool all_in_state(MemristorState state) const;
    void replace_device(std::size_t index, const MemristorDevice& device);

private:
    ArchitectureKind kind_;
    ArrayGeometry geometry_;
    std::vector<MemristorDevice> devices_;
    CostParameters costs_;
    bool programmed_ = false;
};

std::size_t circuit_count(const ArrayArchitecture& arch);
double power_report(const ArrayArchitecture& arch);
double area_report(const ArrayArchitecture& arch);
double frame_latency(const ArrayArchitecture& arch);

/// Fraction of circuits saved by the column-sequential layout, 1 - 1/m.
double component_reduction(ArrayGeometry geometry);

struct CostReport {
    ArchitectureKind architecture = ArchitectureKind::PixelParallel;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t circuits = 0;
    double power_w = 0.0;
    double area_um2 = 0.0;
    double latency_s = 0.0;
    double reduction_percent = 0.0;
};

CostReport cost_report(const ArrayArchitecture& arch);
void to_json(nlohmann::json& j, const CostReport& report);

/// Per-pixel transfer with v_in = current, v_r = previous. Frames are
/// n_cols wide and n_rows high. Throws on geometry mismatch or when the
/// devices have not been programmed.
Frame process_frame_pair(const ArrayArchitecture& arch, const Frame& previous, const Frame& current,
                         const CircuitConfig& config, unsigned threads = 1);

} // namespace memsense
