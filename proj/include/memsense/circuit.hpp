#pragma once

#include "memsense/device.hpp"

namespace memsense {

/// Component values of the two-stage differencing circuit.
///
/// Stage one is a non-inverting amplifier (r1 to ground, r2 feedback) that
/// produces V_a from the current pixel. Stage two drives its inverting node
/// from V_a through the memristor, from ground through r3, and feeds back
/// through r4; its non-inverting input is the reference pixel V_r.
struct CircuitConfig {
    double r1 = 1e3;
    double r2 = 2e3;
    double r3 = 1e3;
    double r4 = 1e3;
    double v_dd = 4.0;
    double r_on_nominal = 1e3;
    double r_off_nominal = 100e3;

    /// Throws std::invalid_argument on non-positive values or r_off <= r_on.
    void validate() const;

    MemristorDevice nominal_device(MemristorState state) const;
};

struct PixelPairInput {
    double v_in; ///< current pixel
    double v_r;  ///< reference (previous or background) pixel
};

double clamp_to_rails(double v, const CircuitConfig& config);

/// V_a = v_in (1 + r2/r1), clamped to the rails.
double amplifier_stage(double v_in, const CircuitConfig& config);

/// V_o = v_r (r4/r_m + r4/r3 + 1) - v_a r4/r_m, unclamped.
/// Throws std::invalid_argument if r_m <= 0.
double difference_stage(double v_a, double v_r, double r_m, const CircuitConfig& config);

/// Both stages composed and clamped. Inputs must lie in [0, v_dd].
double transfer(PixelPairInput input, const MemristorDevice& device, const CircuitConfig& config);

} // namespace memsense
