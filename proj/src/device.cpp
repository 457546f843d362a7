#include "memsense/device.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace memsense {

MemristorDevice::MemristorDevice(double r_on_nominal, double r_off_nominal,
                                 MemristorState state, double mismatch)
    : r_on_(r_on_nominal), r_off_(r_off_nominal), state_(state), mismatch_(mismatch)
{
    if (!(r_on_ > 0.0) || !std::isfinite(r_on_))
        throw std::invalid_argument("memristor: r_on must be positive, got " + std::to_string(r_on_));
    if (!(r_off_ > r_on_) || !std::isfinite(r_off_))
        throw std::invalid_argument("memristor: r_off must exceed r_on, got " + std::to_string(r_off_));
    if (!(mismatch_ > 0.0) || !std::isfinite(mismatch_))
        throw std::invalid_argument("memristor: mismatch must be positive, got " + std::to_string(mismatch_));
}

double MemristorDevice::effective_resistance() const
{
    const double nominal = state_ == MemristorState::LowResistance ? r_on_ : r_off_;
    return nominal * mismatch_;
}

MemristorDevice program(const MemristorDevice& device, MemristorState state)
{
    return MemristorDevice(device.r_on_nominal(), device.r_off_nominal(), state, device.mismatch());
}

double effective_resistance(const MemristorDevice& device)
{
    return device.effective_resistance();
}

namespace {

void check_fraction(double p)
{
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("variation fraction must lie in [0, 1), got " + std::to_string(p));
}

// 53 high bits -> [0, 1). std::uniform_real_distribution is not portable
// across standard libraries, this is.
double unit_interval(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

double sample_mismatch(std::mt19937_64& rng, double variation_fraction)
{
    check_fraction(variation_fraction);
    const double u = unit_interval(rng);
    return 1.0 - variation_fraction + 2.0 * variation_fraction * u;
}

double device_mismatch(std::uint64_t seed, std::uint64_t index, double variation_fraction)
{
    check_fraction(variation_fraction);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    return sample_mismatch(rng, variation_fraction);
}

} // namespace memsense
