// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "memsense/array.hpp"
#include "memsense/circuit.hpp"
#include "memsense/experiment.hpp"
#include "memsense/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace memsense;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// 1. Closed forms over 1000 random pixel pairs.
Outcome closed_forms()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const CircuitConfig cfg;
    const auto ron = cfg.nominal_device(MemristorState::LowResistance);
    const auto roff = cfg.nominal_device(MemristorState::HighResistance);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> volt(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v_in = volt(rng), v_r = volt(rng);
        worst = std::max(worst, std::abs(transfer({v_in, v_r}, ron, cfg) - (3 * v_r - 3 * v_in)));
        worst = std::max(worst, std::abs(transfer({v_in, v_r}, roff, cfg) - (2.01 * v_r - 0.03 * v_in)));
    }
    const double elapsed = seconds_since(t0);
    out.require(worst < 1e-12, fmt("max error %.3e V", worst));
    out.require(elapsed < 1.0, fmt("took %.3f s", elapsed));
    out.detail = fmt("max error %.2e V in %.4f s", worst, elapsed) + (out.pass ? "" : " | " + out.detail);
    return out;
}

// 2. difference_stage against the inverting-node KCL balance and hand-worked values.
Outcome eq1_oracle()
{
    Outcome out;
    struct Case {
        double r3, r4, r_m, expected;
    };
    // v_a = 1.2 V, v_r = 0.7 V; expected worked out by hand.
    const Case cases[] = {
        {1e3, 1e3, 1e3, 0.9},      // 0.7*3 - 1.2
        {1e3, 1e3, 100e3, 1.395},  // 0.7*2.01 - 1.2*0.01
        {2e3, 1e3, 2e3, 0.8},      // 0.7*2 - 1.2*0.5
        {1e3, 2e3, 0.5e3, 0.1},    // 0.7*7 - 1.2*4
        {0.5e3, 1e3, 10e3, 2.05},  // 0.7*3.1 - 1.2*0.1
    };
    const double v_a = 1.2, v_r = 0.7;
    double worst = 0.0;
    for (const auto& c : cases) {
        CircuitConfig cfg;
        cfg.r3 = c.r3;
        cfg.r4 = c.r4;
        // Ideal op-amp holds the inverting node at v_r; current sum there is
        // affine in V_o, so two evaluations pin its root.
        auto kcl = [&](double v_o) { return (v_r - v_a) / c.r_m + v_r / c.r3 + (v_r - v_o) / c.r4; };
        const double root = -kcl(0.0) / (kcl(1.0) - kcl(0.0));
        const double got = difference_stage(v_a, v_r, c.r_m, cfg);
        worst = std::max({worst, std::abs(got - root), std::abs(got - c.expected)});
    }
    out.require(worst < 1e-12, fmt("max error %.3e V", worst));
    out.detail = fmt("5 resistor sets, max error %.2e V", worst) + (out.pass ? "" : " | " + out.detail);
    return out;
}

// 3. Column-sequential saves exactly 1 - 1/m of the circuits.
Outcome component_reduction_exact()
{
    Outcome out;
    const CircuitConfig cfg;
    std::string seen;
    for (std::size_t m : {1u, 2u, 4u, 8u, 64u}) {
        const ArrayGeometry g{16, m};
        const auto par = circuit_count(ArrayArchitecture(ArchitectureKind::PixelParallel, g, cfg, 0.0, 0));
        const auto col = circuit_count(ArrayArchitecture(ArchitectureKind::ColumnSequential, g, cfg, 0.0, 0));
        const double measured = static_cast<double>(par - col) / static_cast<double>(par);
        const double expected = 1.0 - 1.0 / static_cast<double>(m);
        out.require(measured == expected, "m=" + std::to_string(m) + fmt(" measured %.17g", measured));
        out.require(component_reduction(g) == expected, "component_reduction m=" + std::to_string(m));
        seen += (seen.empty() ? "" : ", ") + std::to_string(m) + ":" + fmt("%.4f%%", measured * 100);
    }
    out.detail = seen + (out.pass ? "" : " | " + out.detail);
    return out;
}

// 4. Per-circuit figures and their linear scaling.
Outcome cost_figures()
{
    Outcome out;
    const CircuitConfig cfg;
    const auto one = cost_report(ArrayArchitecture(ArchitectureKind::PixelParallel, {1, 1}, cfg, 0.0, 0));
    out.require(one.circuits == 1, "single circuit count");
    out.require(one.power_w == 96.64e-3, fmt("power %.17g W", one.power_w));
    out.require(one.area_um2 == 531.66, fmt("area %.17g um^2", one.area_um2));

    const auto par = cost_report(ArrayArchitecture(ArchitectureKind::PixelParallel, {64, 64}, cfg, 0.0, 0));
    const auto col = cost_report(ArrayArchitecture(ArchitectureKind::ColumnSequential, {64, 64}, cfg, 0.0, 0));
    out.require(par.power_w == 4096 * 96.64e-3 && std::abs(par.power_w - 395.84) < 0.005,
                fmt("64x64 parallel power %.6f W", par.power_w));
    out.require(col.power_w == 64 * 96.64e-3 && std::abs(col.power_w - 6.185) < 0.0005,
                fmt("64x64 column power %.6f W", col.power_w));
    out.require(par.area_um2 == 4096 * 531.66 && col.area_um2 == 64 * 531.66, "64x64 area scaling");
    out.require(col.reduction_percent == 98.4375, fmt("reduction %.6f%%", col.reduction_percent));
    out.detail = fmt("1 circuit: %.2f mW, %.2f um^2; ", one.power_w * 1e3, one.area_um2) +
                 fmt("64x64: %.5f W parallel, %.5f W column", par.power_w, col.power_w) +
                 (out.pass ? "" : " | " + out.detail);
    return out;
}

ExperimentConfig standard_scene()
{
    ExperimentConfig cfg;
    cfg.scene.geometry = {64, 64};
    cfg.scene.object_rows = 16;
    cfg.scene.object_cols = 16;
    cfg.scene.velocity_rows = 0;
    cfg.scene.velocity_cols = 2;
    cfg.scene.frames = 10;
    cfg.scene.foreground = 255;
    cfg.scene.background = 0;
    return cfg;
}

// 5. Detection under 0 / 10 / 30 / 50 % memristor mismatch.
Outcome variation_robustness()
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::size_t kSeeds = 20;

    auto base = standard_scene();
    const double ideal = *run_experiment(base).mean_iou;
    out.require(ideal == 1.0, fmt("(a) p=0 mean IoU %.6f", ideal));

    std::string detail = fmt("(a) p=0 IoU %.3f", ideal);
    for (double p : {0.10, 0.30}) {
        double lowest = 1.0;
        for (std::size_t s = 0; s < kSeeds; ++s) {
            auto cfg = base;
            cfg.variation = p;
            cfg.seed = s;
            lowest = std::min(lowest, *run_experiment(cfg).min_iou);
        }
        out.require(lowest >= 0.9, fmt("(b) p=%.2f min IoU %.4f", p, lowest));
        detail += fmt("; (b) p=%.2f min IoU %.3f", p, lowest);
    }

    std::size_t wins = 0;
    double sum_raw = 0.0, sum_filtered = 0.0;
    for (std::size_t s = 0; s < kSeeds; ++s) {
        auto cfg = base;
        cfg.variation = 0.50;
        cfg.seed = s;
        const double raw = *run_experiment(cfg).mean_iou;
        cfg.filter = FilterKind::Median3;
        const double med = *run_experiment(cfg).mean_iou;
        wins += med >= raw ? 1 : 0;
        sum_raw += raw;
        sum_filtered += med;
    }
    out.require(wins >= 18, "(c) filtered >= unfiltered on " + std::to_string(wins) + "/20 seeds");
    detail += fmt("; (c) p=0.50 mean IoU %.3f raw vs %.3f median3", sum_raw / kSeeds, sum_filtered / kSeeds) +
              ", filtered wins " + std::to_string(wins) + "/20";

    const double elapsed = seconds_since(t0);
    out.require(elapsed < 30.0, fmt("took %.2f s", elapsed));
    out.detail = detail + fmt(" (%.2f s)", elapsed) + (out.pass ? "" : " | " + out.detail);
    return out;
}

// 6. Roff preserves the background: 0.03 V total swing, 1/100 of Ron.
Outcome background_preservation()
{
    Outcome out;
    const CircuitConfig cfg;
    ArrayArchitecture arch(ArchitectureKind::PixelParallel, {8, 8}, cfg, 0.0, 0);
    const Frame background(8, 8, kPixelRange, 1.0);
    const Frame dark(8, 8, kPixelRange, 0.0);
    const Frame bright(8, 8, kPixelRange, 1.0);
    double worst_hi = 0.0, worst_ratio = 0.0;
    const auto hi_dark = static_mode(background, dark, MemristorState::HighResistance, arch, cfg);
    const auto hi_bright = static_mode(background, bright, MemristorState::HighResistance, arch, cfg);
    const auto lo_dark = static_mode(background, dark, MemristorState::LowResistance, arch, cfg);
    const auto lo_bright = static_mode(background, bright, MemristorState::LowResistance, arch, cfg);
    for (std::size_t i = 0; i < hi_dark.size(); ++i) {
        const double hi_swing = hi_dark.values()[i] - hi_bright.values()[i];
        const double lo_swing = lo_dark.values()[i] - lo_bright.values()[i];
        worst_hi = std::max(worst_hi, std::abs(hi_swing - 0.03));
        worst_ratio = std::max(worst_ratio, std::abs(lo_swing / hi_swing - 100.0));
    }
    out.require(worst_hi < 1e-12, fmt("Roff swing off by %.3e V", worst_hi));
    out.require(worst_ratio < 1e-9, fmt("Ron/Roff ratio off by %.3e", worst_ratio));
    out.detail = fmt("Roff swing 0.03 V (err %.1e), Ron/Roff = 100 (err %.1e)", worst_hi, worst_ratio) +
                 (out.pass ? "" : " | " + out.detail);
    return out;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// 7. Byte-identical outputs across repeated and parallel runs.
Outcome determinism()
{
    Outcome out;
    const auto root = fs::temp_directory_path() / "memsense_acceptance_determinism";
    fs::remove_all(root);
    std::size_t compared = 0;
    for (auto kind : {ArchitectureKind::PixelParallel, ArchitectureKind::ColumnSequential}) {
        auto cfg = standard_scene();
        cfg.architecture = kind;
        cfg.variation = 0.5;
        cfg.seed = 1234;
        cfg.filter = FilterKind::Median3;
        const std::string tag(to_string(kind));
        std::vector<fs::path> dirs;
        for (unsigned threads : {1u, 1u, 4u}) {
            cfg.threads = threads;
            cfg.output_dir = root / (tag + "_" + std::to_string(dirs.size()));
            run_experiment(cfg);
            dirs.push_back(cfg.output_dir);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            const auto reference = slurp(entry.path());
            for (std::size_t k = 1; k < dirs.size(); ++k) {
                const auto other = dirs[k] / entry.path().filename();
                out.require(fs::exists(other) && slurp(other) == reference,
                            tag + " " + entry.path().filename().string() + " differs");
                ++compared;
            }
        }
    }
    out.detail = std::to_string(compared) + " file comparisons (serial x2, 4 threads)" +
                 (out.pass ? "" : " | " + out.detail);
    return out;
}

// 8. Transfer sweep CSV shape.
Outcome sweep_shape()
{
    Outcome out;
    std::istringstream in(transfer_sweep_csv(CircuitConfig{}, 1.0, 10));
    std::string line;
    std::getline(in, line);
    out.require(line == "v_in,v_a,v_o_ron,v_o_roff", "header '" + line + "'");
    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        std::array<double, 4> r{};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r[0], &r[1], &r[2], &r[3]) != 4)
            out.require(false, "bad row '" + line + "'");
        rows.push_back(r);
    }
    out.require(rows.size() == 11, "expected 11 rows, got " + std::to_string(rows.size()));
    double ron_slope_err = 0.0, roff_slope_err = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double dv = rows[k][0] - rows[k - 1][0];
        out.require(rows[k][2] < rows[k - 1][2], "v_o_ron not strictly decreasing");
        ron_slope_err = std::max(ron_slope_err, std::abs((rows[k][2] - rows[k - 1][2]) / dv + 3.0));
        roff_slope_err = std::max(roff_slope_err, std::abs((rows[k][3] - rows[k - 1][3]) / dv + 0.03));
    }
    // six printed decimals bound each slope estimate by ~1e-5 / 0.1
    out.require(ron_slope_err < 1e-4, fmt("Ron slope off by %.3e", ron_slope_err));
    out.require(roff_slope_err < 1e-4, fmt("Roff slope off by %.3e", roff_slope_err));
    out.detail = fmt("Ron slope -3 (err %.1e), Roff slope -0.03 (err %.1e)", ron_slope_err, roff_slope_err) +
                 (out.pass ? "" : " | " + out.detail);
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 closed-form reproduction", closed_forms},
        {"2 difference-stage oracle", eq1_oracle},
        {"3 component reduction", component_reduction_exact},
        {"4 cost figures", cost_figures},
        {"5 variation robustness", variation_robustness},
        {"6 Roff background preservation", background_preservation},
        {"7 determinism", determinism},
        {"8 sweep output", sweep_shape},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %-32s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
