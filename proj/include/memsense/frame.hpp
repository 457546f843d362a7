#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace memsense {

struct VoltageRange {
    double min = 0.0;
    double max = 1.0;

    bool contains(double v) const { return v >= min && v <= max; }
    bool operator==(const VoltageRange&) const = default;
};

/// Row-major grid of pixel voltages. Every stored value lies inside `range()`.
class Frame {
public:
    Frame(std::size_t width, std::size_t height, VoltageRange range, double fill = 0.0);
    Frame(std::size_t width, std::size_t height, VoltageRange range, std::vector<double> values);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return values_.size(); }
    VoltageRange range() const { return range_; }

    double operator()(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }
    double at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, double v);

    std::span<const double> values() const { return values_; }

    bool same_shape(const Frame& other) const
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const Frame&) const = default;

private:
    std::size_t width_;
    std::size_t height_;
    VoltageRange range_;
    std::vector<double> values_;
};

/// Binary grid, row-major, one byte per pixel (0 or 1).
class Mask {
public:
    Mask(std::size_t width, std::size_t height, bool fill = false);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return bits_.size(); }

    bool operator()(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
    bool at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, bool v);

    std::size_t count() const;
    std::span<const std::uint8_t> bits() const { return bits_; }

    bool same_shape(const Mask& other) const
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const Mask&) const = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> bits_;
};

} // namespace memsense
