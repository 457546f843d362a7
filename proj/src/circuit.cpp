#include "memsense/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace memsense {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string("circuit: ") + name + " must be positive, got " +
                                    std::to_string(value));
}

} // namespace

void CircuitConfig::validate() const
{
    require_positive(r1, "r1");
    require_positive(r2, "r2");
    require_positive(r3, "r3");
    require_positive(r4, "r4");
    require_positive(v_dd, "v_dd");
    require_positive(r_on_nominal, "r_on");
    require_positive(r_off_nominal, "r_off");
    if (!(r_off_nominal > r_on_nominal))
        throw std::invalid_argument("circuit: r_off must exceed r_on");
}

MemristorDevice CircuitConfig::nominal_device(MemristorState state) const
{
    return MemristorDevice(r_on_nominal, r_off_nominal, state, 1.0);
}

double clamp_to_rails(double v, const CircuitConfig& config)
{
    return std::clamp(v, -config.v_dd, config.v_dd);
}

double amplifier_stage(double v_in, const CircuitConfig& config)
{
    return clamp_to_rails(v_in * (1.0 + config.r2 / config.r1), config);
}

double difference_stage(double v_a, double v_r, double r_m, const CircuitConfig& config)
{
    if (!(r_m > 0.0))
        throw std::invalid_argument("circuit: memristance must be positive, got " + std::to_string(r_m));
    const double k = config.r4 / r_m;
    return v_r * (k + config.r4 / config.r3 + 1.0) - v_a * k;
}

double transfer(PixelPairInput input, const MemristorDevice& device, const CircuitConfig& config)
{
    if (!(input.v_in >= 0.0 && input.v_in <= config.v_dd) || !(input.v_r >= 0.0 && input.v_r <= config.v_dd))
        throw std::invalid_argument("circuit: pixel voltages must lie in [0, v_dd]");
    const double v_a = amplifier_stage(input.v_in, config);
    return clamp_to_rails(difference_stage(v_a, input.v_r, device.effective_resistance(), config), config);
}

} // namespace memsense
