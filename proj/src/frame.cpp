#include "memsense/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace memsense {

namespace {

void check_dims(std::size_t width, std::size_t height)
{
    if (width == 0 || height == 0)
        throw std::invalid_argument("frame dimensions must be non-zero");
}

[[noreturn]] void out_of_bounds(std::size_t row, std::size_t col)
{
    throw std::out_of_range("pixel (" + std::to_string(row) + ", " + std::to_string(col) + ") out of bounds");
}

} // namespace

Frame::Frame(std::size_t width, std::size_t height, VoltageRange range, double fill)
    : Frame(width, height, range, std::vector<double>(width * height, fill))
{
}

Frame::Frame(std::size_t width, std::size_t height, VoltageRange range, std::vector<double> values)
    : width_(width), height_(height), range_(range), values_(std::move(values))
{
    check_dims(width, height);
    if (!(range.min <= range.max))
        throw std::invalid_argument("frame: empty voltage range");
    if (values_.size() != width * height)
        throw std::invalid_argument("frame: expected " + std::to_string(width * height) + " values, got " +
                                    std::to_string(values_.size()));
    auto bad = std::find_if(values_.begin(), values_.end(), [&](double v) { return !range_.contains(v); });
    if (bad != values_.end())
        throw std::invalid_argument("frame: value " + std::to_string(*bad) + " outside declared range");
}

double Frame::at(std::size_t row, std::size_t col) const
{
    if (row >= height_ || col >= width_)
        out_of_bounds(row, col);
    return (*this)(row, col);
}

void Frame::set(std::size_t row, std::size_t col, double v)
{
    if (row >= height_ || col >= width_)
        out_of_bounds(row, col);
    if (!range_.contains(v))
        throw std::invalid_argument("frame: value " + std::to_string(v) + " outside declared range");
    values_[row * width_ + col] = v;
}

Mask::Mask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), bits_(width * height, fill ? 1 : 0)
{
    check_dims(width, height);
}

bool Mask::at(std::size_t row, std::size_t col) const
{
    if (row >= height_ || col >= width_)
        out_of_bounds(row, col);
    return (*this)(row, col);
}

void Mask::set(std::size_t row, std::size_t col, bool v)
{
    if (row >= height_ || col >= width_)
        out_of_bounds(row, col);
    bits_[row * width_ + col] = v ? 1 : 0;
}

std::size_t Mask::count() const
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

} // namespace memsense
