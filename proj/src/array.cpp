#include "memsense/array.hpp"

#include "memsense/parallel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace memsense {

std::string_view to_string(ArchitectureKind kind)
{
    return kind == ArchitectureKind::PixelParallel ? "parallel" : "column";
}

ArchitectureKind parse_architecture(std::string_view name)
{
    if (name == "parallel")
        return ArchitectureKind::PixelParallel;
    if (name == "column")
        return ArchitectureKind::ColumnSequential;
    throw std::invalid_argument("unknown architecture '" + std::string(name) + "' (expected parallel|column)");
}

void ArrayGeometry::validate() const
{
    if (n_rows < 1 || n_cols < 1)
        throw std::invalid_argument("array geometry needs at least one row and one column");
}

AnalogRowMemory::AnalogRowMemory(std::size_t length) : stored_(length, 0.0) {}

void AnalogRowMemory::write(std::span<const double> values)
{
    if (values.size() != stored_.size())
        throw std::invalid_argument("analog memory: write of " + std::to_string(values.size()) +
                                    " values into length " + std::to_string(stored_.size()));
    std::copy(values.begin(), values.end(), stored_.begin());
    valid_ = true;
}

double AnalogRowMemory::read(std::size_t index) const
{
    if (!valid_)
        throw std::logic_error("analog memory: read before first write");
    if (index >= stored_.size())
        throw std::out_of_range("analog memory: index " + std::to_string(index) + " out of range");
    return stored_[index];
}

std::size_t ArrayArchitecture::devices_required(ArchitectureKind kind, ArrayGeometry geometry)
{
    return kind == ArchitectureKind::PixelParallel ? geometry.n_rows * geometry.n_cols : geometry.n_rows;
}

ArrayArchitecture::ArrayArchitecture(ArchitectureKind kind, ArrayGeometry geometry, const CircuitConfig& config,
                                     double variation_fraction, std::uint64_t seed, CostParameters costs)
    : kind_(kind), geometry_(geometry), costs_(costs)
{
    geometry_.validate();
    config.validate();
    const std::size_t count = devices_required(kind, geometry);
    devices_.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        devices_.emplace_back(config.r_on_nominal, config.r_off_nominal, MemristorState::HighResistance,
                              device_mismatch(seed, i, variation_fraction));
}

ArrayArchitecture::ArrayArchitecture(ArchitectureKind kind, ArrayGeometry geometry,
                                     std::vector<MemristorDevice> devices, CostParameters costs)
    : kind_(kind), geometry_(geometry), devices_(std::move(devices)), costs_(costs), programmed_(true)
{
    geometry_.validate();
    if (devices_.size() != devices_required(kind, geometry))
        throw std::invalid_argument("array: expected " + std::to_string(devices_required(kind, geometry)) +
                                    " devices, got " + std::to_string(devices_.size()));
}

const MemristorDevice& ArrayArchitecture::device_for(std::size_t row, std::size_t col) const
{
    if (row >= geometry_.n_rows || col >= geometry_.n_cols)
        throw std::out_of_range("array: pixel outside geometry");
    // Column-sequential: every column of row i goes through the same circuit.
    return kind_ == ArchitectureKind::PixelParallel ? devices_[row * geometry_.n_cols + col] : devices_[row];
}

void ArrayArchitecture::program_all(MemristorState state)
{
    for (auto& d : devices_)
        d = program(d, state);
    programmed_ = true;
}

bool ArrayArchitecture::all_in_state(MemristorState state) const
{
    return programmed_ &&
           std::all_of(devices_.begin(), devices_.end(), [&](const auto& d) { return d.state() == state; });
}

void ArrayArchitecture::replace_device(std::size_t index, const MemristorDevice& device)
{
    if (index >= devices_.size())
        throw std::out_of_range("array: device index out of range");
    devices_[index] = device;
}

std::size_t circuit_count(const ArrayArchitecture& arch)
{
    return ArrayArchitecture::devices_required(arch.kind(), arch.geometry());
}

double power_report(const ArrayArchitecture& arch)
{
    return static_cast<double>(circuit_count(arch)) * arch.costs().per_circuit_power_w;
}

double area_report(const ArrayArchitecture& arch)
{
    return static_cast<double>(circuit_count(arch)) * arch.costs().per_circuit_area_um2;
}

double frame_latency(const ArrayArchitecture& arch)
{
    const double t = arch.costs().row_settle_time_s;
    if (!(t > 0.0))
        throw std::invalid_argument("array: row settle time must be positive");
    if (arch.kind() == ArchitectureKind::PixelParallel)
        return t;
    return static_cast<double>(arch.geometry().n_cols) * t;
}

double component_reduction(ArrayGeometry geometry)
{
    geometry.validate();
    const auto parallel = static_cast<double>(geometry.n_rows * geometry.n_cols);
    const auto column = static_cast<double>(geometry.n_rows);
    return (parallel - column) / parallel;
}

CostReport cost_report(const ArrayArchitecture& arch)
{
    CostReport r{arch.kind()};
    r.n = arch.geometry().n_rows;
    r.m = arch.geometry().n_cols;
    r.circuits = circuit_count(arch);
    r.power_w = power_report(arch);
    r.area_um2 = area_report(arch);
    r.latency_s = frame_latency(arch);
    r.reduction_percent = component_reduction(arch.geometry()) * 100.0;
    return r;
}

void to_json(nlohmann::json& j, const CostReport& report)
{
    j = nlohmann::json{{"architecture", std::string(to_string(report.architecture))},
                       {"n", report.n},
                       {"m", report.m},
                       {"circuits", report.circuits},
                       {"power_w", report.power_w},
                       {"area_um2", report.area_um2},
                       {"latency_s", report.latency_s},
                       {"reduction_percent", report.reduction_percent}};
}

Frame process_frame_pair(const ArrayArchitecture& arch, const Frame& previous, const Frame& current,
                         const CircuitConfig& config, unsigned threads)
{
    const auto geo = arch.geometry();
    if (!previous.same_shape(current) || current.height() != geo.n_rows || current.width() != geo.n_cols)
        throw std::invalid_argument("process_frame_pair: frames are " + std::to_string(current.width()) + "x" +
                                    std::to_string(current.height()) + ", array is " +
                                    std::to_string(geo.n_cols) + "x" + std::to_string(geo.n_rows));
    if (!arch.programmed())
        throw std::logic_error("process_frame_pair: devices have not been programmed");
    config.validate();
    // transfer() rejects these too, but workers must not throw.
    for (const Frame* f : {&previous, &current})
        if (std::any_of(f->values().begin(), f->values().end(),
                        [&](double v) { return !(v >= 0.0 && v <= config.v_dd); }))
            throw std::invalid_argument("process_frame_pair: pixel voltage outside [0, v_dd]");

    std::vector<double> out(geo.pixels());
    if (arch.kind() == ArchitectureKind::PixelParallel) {
        parallel_chunks(geo.n_rows, threads, [&](std::size_t r0, std::size_t r1) {
            for (std::size_t r = r0; r < r1; ++r)
                for (std::size_t c = 0; c < geo.n_cols; ++c)
                    out[r * geo.n_cols + c] =
                        transfer({current(r, c), previous(r, c)}, arch.device_for(r, c), config);
        });
    } else {
        // One scan step per column: latch the previous frame's column into
        // the memory, then the n row circuits evaluate against it.
        parallel_chunks(geo.n_cols, threads, [&](std::size_t c0, std::size_t c1) {
            AnalogRowMemory memory(geo.n_rows);
            std::vector<double> column(geo.n_rows);
            for (std::size_t c = c0; c < c1; ++c) {
                for (std::size_t r = 0; r < geo.n_rows; ++r)
                    column[r] = previous(r, c);
                memory.write(column);
                for (std::size_t r = 0; r < geo.n_rows; ++r)
                    out[r * geo.n_cols + c] = transfer({current(r, c), memory.read(r)}, arch.device_for(r, c), config);
            }
        });
    }
    return Frame(geo.n_cols, geo.n_rows, {-config.v_dd, config.v_dd}, std::move(out));
}

} // namespace memsense
