#pragma once

#include "memsense/frame.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace memsense {

/// Decode failure; carries the file name and byte offset of the problem.
class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& source, std::size_t offset, const std::string& what);

    const std::string& source() const { return source_; }
    std::size_t offset() const { return offset_; }

private:
    std::string source_;
    std::size_t offset_;
};

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<std::uint16_t> pixels; ///< row-major, each <= maxval
};

/// Parses ASCII (P2) or binary (P5, 8 or 16 bit) PGM.
GrayImage parse_pgm(std::span<const std::uint8_t> bytes, const std::string& source);
GrayImage read_pgm(const std::filesystem::path& path);

/// Binary P5, maxval 255.
std::vector<std::uint8_t> encode_pgm(std::size_t width, std::size_t height, std::span<const std::uint8_t> gray);
void write_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
               std::span<const std::uint8_t> gray);

/// value / maxval scaled to the pixel full scale.
Frame to_frame(const GrayImage& image);

/// Loads every path as a frame; all must share one size.
std::vector<Frame> load_sequence(std::span<const std::filesystem::path> paths);

enum class SaveMode {
    SignedDifference, ///< [-3 V, +3 V] -> [0, 255], 0 V -> 128
    Mask,             ///< false/true -> 0/255
    Raw,              ///< declared range -> [0, 255]
};

inline constexpr double kSignedDifferenceSpan = 3.0;

std::vector<std::uint8_t> quantize(const Frame& frame, SaveMode mode);
std::vector<std::uint8_t> quantize(const Mask& mask);

void save_frame(const Frame& frame, const std::filesystem::path& path, SaveMode mode);
void save_frame(const Mask& mask, const std::filesystem::path& path);

} // namespace memsense
