#pragma once

#include <cstdint>
#include <random>

namespace memsense {

enum class MemristorState { LowResistance, HighResistance };

/// Two-state programmable resistor. The mismatch factor is fixed when the
/// device is fabricated (sampled) and scales whichever nominal is active.
class MemristorDevice {
public:
    MemristorDevice(double r_on_nominal, double r_off_nominal,
                    MemristorState state = MemristorState::HighResistance,
                    double mismatch = 1.0);

    double r_on_nominal() const { return r_on_; }
    double r_off_nominal() const { return r_off_; }
    MemristorState state() const { return state_; }
    double mismatch() const { return mismatch_; }

    double effective_resistance() const;

private:
    double r_on_;
    double r_off_;
    MemristorState state_;
    double mismatch_;
};

/// Returns a copy of `device` in `state`; nominals and mismatch are kept.
MemristorDevice program(const MemristorDevice& device, MemristorState state);

double effective_resistance(const MemristorDevice& device);

/// Uniform draw on [1 - p, 1 + p]. Throws std::invalid_argument unless 0 <= p < 1.
double sample_mismatch(std::mt19937_64& rng, double variation_fraction);

/// Mismatch of the device at `index` in an array seeded with `seed`. Each
/// index owns its own engine, so the value does not depend on how many
/// other devices were sampled or in what order.
double device_mismatch(std::uint64_t seed, std::uint64_t index, double variation_fraction);

} // namespace memsense
