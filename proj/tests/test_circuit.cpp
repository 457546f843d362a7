#include <doctest.h>

#include "memsense/circuit.hpp"

#include <random>
#include <stdexcept>

using namespace memsense;

namespace {

const CircuitConfig kDefault{};
const auto kRon = kDefault.nominal_device(MemristorState::LowResistance);
const auto kRoff = kDefault.nominal_device(MemristorState::HighResistance);

} // namespace

TEST_CASE("default component values")
{
    CHECK(kDefault.r1 == 1e3);
    CHECK(kDefault.r2 == 2e3);
    CHECK(kDefault.r3 == 1e3);
    CHECK(kDefault.r4 == 1e3);
    CHECK(kDefault.r_on_nominal == 1e3);
    CHECK(kDefault.r_off_nominal == 100e3);
    CHECK(kDefault.v_dd == 4.0);
    CHECK_NOTHROW(kDefault.validate());

    CircuitConfig bad;
    bad.r3 = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.r_off_nominal = 500.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("amplifier stage")
{
    CHECK(amplifier_stage(0.0, kDefault) == 0.0);
    CHECK(amplifier_stage(1.0, kDefault) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(amplifier_stage(0.4, kDefault) == doctest::Approx(1.2).epsilon(1e-15));
    // 1.5 V * 3 saturates at the 4 V rail
    CHECK(amplifier_stage(1.5, kDefault) == 4.0);
}

TEST_CASE("difference stage")
{
    CHECK(std::abs(difference_stage(3.0, 1.0, 1e3, kDefault)) < 1e-12);
    CHECK(difference_stage(0.0, 0.0, 1e3, kDefault) == 0.0);
    CHECK(std::abs(difference_stage(1.5, 1.0, 100e3, kDefault) - 1.995) < 1e-12);
    // same value through the Roff closed form at V_in = 0.5 V
    CHECK(std::abs(difference_stage(1.5, 1.0, 100e3, kDefault) - (2.01 * 1.0 - 0.03 * 0.5)) < 1e-12);
    CHECK_THROWS_AS(difference_stage(1.0, 1.0, 0.0, kDefault), std::invalid_argument);
    CHECK_THROWS_AS(difference_stage(1.0, 1.0, -5.0, kDefault), std::invalid_argument);
}

TEST_CASE("clamp to rails")
{
    CHECK(clamp_to_rails(10.0, kDefault) == 4.0);
    CHECK(clamp_to_rails(-10.0, kDefault) == -4.0);
    CHECK(clamp_to_rails(1.5, kDefault) == 1.5);
}

TEST_CASE("transfer examples")
{
    CHECK(std::abs(transfer({1.0, 1.0}, kRon, kDefault)) < 1e-12);
    CHECK(transfer({0.0, 1.0}, kRon, kDefault) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::abs(transfer({1.0, 1.0}, kRoff, kDefault) - 1.98) < 1e-12);
    // 3*0.2 - 3*0.8 = -1.8, inside the symmetric rails
    CHECK(std::abs(transfer({0.8, 0.2}, kRon, kDefault) + 1.8) < 1e-12);

    // R_m = R/2: V_o = 0 - 3 V * 2 = -6 V, held at the -4 V rail
    const MemristorDevice weak(1e3, 100e3, MemristorState::LowResistance, 0.5);
    CHECK(transfer({1.0, 0.0}, weak, kDefault) == -4.0);
    CHECK_THROWS_AS(transfer({-0.1, 0.0}, kRon, kDefault), std::invalid_argument);
    CHECK_THROWS_AS(transfer({0.0, 4.5}, kRon, kDefault), std::invalid_argument);
}

TEST_CASE("transfer properties on random inputs")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> volt(0.0, 1.0);
    std::uniform_real_distribution<double> mis(0.5, 1.5);
    for (int i = 0; i < 2000; ++i) {
        const double a_in = volt(rng), a_r = volt(rng);
        const double b_in = volt(rng), b_r = volt(rng);

        // closed forms
        CHECK(std::abs(transfer({a_in, a_r}, kRon, kDefault) - (3 * a_r - 3 * a_in)) < 1e-12);
        CHECK(std::abs(transfer({a_in, a_r}, kRoff, kDefault) - (2.01 * a_r - 0.03 * a_in)) < 1e-12);

        // antisymmetry in difference mode
        CHECK(std::abs(transfer({a_in, a_r}, kRon, kDefault) + transfer({a_r, a_in}, kRon, kDefault)) < 1e-12);

        // affinity (Ron outputs stay within +-3 V, never clamped)
        const double alpha = volt(rng);
        const double mixed = transfer({alpha * a_in + (1 - alpha) * b_in, alpha * a_r + (1 - alpha) * b_r}, kRon,
                                      kDefault);
        const double combo =
            alpha * transfer({a_in, a_r}, kRon, kDefault) + (1 - alpha) * transfer({b_in, b_r}, kRon, kDefault);
        CHECK(std::abs(mixed - combo) < 1e-12);

        // monotone in each input, rail bound, even with mismatch
        const MemristorDevice dev(1e3, 100e3, MemristorState::LowResistance, mis(rng));
        const double lo = std::min(a_in, b_in), hi = std::max(a_in, b_in);
        CHECK(transfer({hi, a_r}, dev, kDefault) <= transfer({lo, a_r}, dev, kDefault));
        CHECK(transfer({a_in, std::max(a_r, b_r)}, dev, kDefault) >= transfer({a_in, std::min(a_r, b_r)}, dev, kDefault));
        CHECK(std::abs(transfer({a_in, a_r}, dev, kDefault)) <= kDefault.v_dd);
    }
}

TEST_CASE("Roff slope is a hundredth of Ron slope")
{
    const double ron_slope = transfer({1.0, 1.0}, kRon, kDefault) - transfer({0.0, 1.0}, kRon, kDefault);
    const double roff_slope = transfer({1.0, 1.0}, kRoff, kDefault) - transfer({0.0, 1.0}, kRoff, kDefault);
    CHECK(ron_slope == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(roff_slope == doctest::Approx(-0.03).epsilon(1e-12));
    CHECK(roff_slope / ron_slope == doctest::Approx(0.01).epsilon(1e-12));
}
