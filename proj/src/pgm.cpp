#include "memsense/pgm.hpp"

#include "memsense/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

namespace memsense {

PgmError::PgmError(const std::string& source, std::size_t offset, const std::string& what)
    : std::runtime_error(source + ": byte " + std::to_string(offset) + ": " + what), source_(source), offset_(offset)
{
}

namespace {

class Reader {
public:
    Reader(std::span<const std::uint8_t> bytes, const std::string& source) : bytes_(bytes), source_(source) {}

    [[noreturn]] void fail(const std::string& what) const { throw PgmError(source_, pos_, what); }

    bool at_end() const { return pos_ >= bytes_.size(); }
    std::size_t pos() const { return pos_; }

    void skip_space_and_comments()
    {
        while (!at_end()) {
            const auto ch = bytes_[pos_];
            if (ch == '#') {
                while (!at_end() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(ch)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long number(const char* what)
    {
        skip_space_and_comments();
        if (at_end())
            fail(std::string("unexpected end of file reading ") + what);
        if (!std::isdigit(bytes_[pos_]))
            fail(std::string("expected ") + what);
        unsigned long value = 0;
        while (!at_end() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000ul)
                fail(std::string(what) + " too large");
            ++pos_;
        }
        if (!at_end() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#')
            fail(std::string("malformed ") + what);
        return value;
    }

    std::uint8_t byte()
    {
        if (at_end())
            fail("unexpected end of pixel data");
        return bytes_[pos_++];
    }

    void advance() { ++pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    const std::string& source_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes, const std::string& source)
{
    Reader in(bytes, source);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        in.fail("missing P2/P5 magic number");
    const bool binary = bytes[1] == '5';
    in.advance();
    in.advance();

    GrayImage img;
    img.width = in.number("width");
    img.height = in.number("height");
    const auto maxval = in.number("maxval");
    if (img.width == 0 || img.height == 0)
        in.fail("zero image dimension");
    if (maxval == 0 || maxval > 65535)
        in.fail("maxval must be in [1, 65535]");
    img.maxval = static_cast<unsigned>(maxval);

    const std::size_t count = img.width * img.height;
    img.pixels.reserve(count);
    if (binary) {
        if (in.at_end() || !std::isspace(in.byte()))
            in.fail("expected single whitespace before raster");
        const bool wide = img.maxval > 255;
        for (std::size_t i = 0; i < count; ++i) {
            unsigned v = in.byte();
            if (wide)
                v = (v << 8) | in.byte();
            if (v > img.maxval)
                in.fail("sample exceeds maxval");
            img.pixels.push_back(static_cast<std::uint16_t>(v));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = in.number("sample");
            if (v > img.maxval)
                in.fail("sample exceeds maxval");
            img.pixels.push_back(static_cast<std::uint16_t>(v));
        }
    }
    return img;
}

GrayImage read_pgm(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_pgm(bytes, path.string());
}

std::vector<std::uint8_t> encode_pgm(std::size_t width, std::size_t height, std::span<const std::uint8_t> gray)
{
    if (gray.size() != width * height)
        throw std::invalid_argument("encode_pgm: pixel count does not match dimensions");
    const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), gray.begin(), gray.end());
    return out;
}

void write_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
               std::span<const std::uint8_t> gray)
{
    const auto bytes = encode_pgm(width, height, gray);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw std::runtime_error(path.string() + ": write failed");
}

Frame to_frame(const GrayImage& image)
{
    std::vector<double> values(image.pixels.size());
    std::transform(image.pixels.begin(), image.pixels.end(), values.begin(), [&](std::uint16_t v) {
        return image.maxval == 255 ? pixel_to_voltage(v)
                                   : static_cast<double>(v) / image.maxval * kPixelFullScale;
    });
    return Frame(image.width, image.height, kPixelRange, std::move(values));
}

std::vector<Frame> load_sequence(std::span<const std::filesystem::path> paths)
{
    std::vector<Frame> frames;
    frames.reserve(paths.size());
    for (const auto& p : paths) {
        frames.push_back(to_frame(read_pgm(p)));
        if (!frames.back().same_shape(frames.front()))
            throw std::invalid_argument(p.string() + ": dimension mismatch, " +
                                        std::to_string(frames.back().width()) + "x" +
                                        std::to_string(frames.back().height()) + " vs " +
                                        std::to_string(frames.front().width()) + "x" +
                                        std::to_string(frames.front().height()));
    }
    return frames;
}

namespace {

std::uint8_t to_byte(double level)
{
    return static_cast<std::uint8_t>(std::clamp(std::round(level), 0.0, 255.0));
}

} // namespace

std::vector<std::uint8_t> quantize(const Frame& frame, SaveMode mode)
{
    std::vector<std::uint8_t> out(frame.size());
    const auto values = frame.values();
    const auto range = frame.range();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        switch (mode) {
        case SaveMode::SignedDifference:
            out[i] = to_byte(127.5 + v * 127.5 / kSignedDifferenceSpan);
            break;
        case SaveMode::Mask:
            out[i] = v != 0.0 ? 255 : 0;
            break;
        case SaveMode::Raw: {
            const double width = range.max - range.min;
            out[i] = to_byte(width > 0.0 ? (v - range.min) / width * 255.0 : 0.0);
            break;
        }
        }
    }
    return out;
}

std::vector<std::uint8_t> quantize(const Mask& mask)
{
    std::vector<std::uint8_t> out(mask.size());
    std::transform(mask.bits().begin(), mask.bits().end(), out.begin(),
                   [](std::uint8_t b) { return b ? std::uint8_t{255} : std::uint8_t{0}; });
    return out;
}

void save_frame(const Frame& frame, const std::filesystem::path& path, SaveMode mode)
{
    write_pgm(path, frame.width(), frame.height(), quantize(frame, mode));
}

void save_frame(const Mask& mask, const std::filesystem::path& path)
{
    write_pgm(path, mask.width(), mask.height(), quantize(mask));
}

} // namespace memsense
