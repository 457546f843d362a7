#include "memsense/config.hpp"

#include "memsense/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace memsense {

std::string_view to_string(FilterKind kind)
{
    switch (kind) {
    case FilterKind::None:
        return "none";
    case FilterKind::Median3:
        return "median3";
    case FilterKind::Median5:
        return "median5";
    }
    return "none";
}

FilterKind parse_filter(std::string_view name)
{
    if (name == "none")
        return FilterKind::None;
    if (name == "median3")
        return FilterKind::Median3;
    if (name == "median5")
        return FilterKind::Median5;
    throw std::invalid_argument("unknown filter '" + std::string(name) + "' (expected none|median3|median5)");
}

std::size_t filter_window(FilterKind kind)
{
    switch (kind) {
    case FilterKind::Median3:
        return 3;
    case FilterKind::Median5:
        return 5;
    case FilterKind::None:
        break;
    }
    return 0;
}

double ExperimentConfig::effective_threshold() const
{
    return threshold.value_or(default_threshold(circuit));
}

void ExperimentConfig::validate() const
{
    if (!(variation >= 0.0 && variation < 1.0))
        throw std::invalid_argument("variation must lie in [0, 1)");
    if (delay < 1)
        throw std::invalid_argument("delay must be at least 1");
    if (threshold && !(*threshold >= 0.0))
        throw std::invalid_argument("threshold must be non-negative");
    circuit.validate();
    if (inputs.empty()) {
        if (scene.delay != delay)
            throw std::invalid_argument("scene delay differs from experiment delay");
        scene.validate();
    } else if (inputs.size() <= delay) {
        throw std::invalid_argument("need more input frames than the delay");
    }
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, const std::string& text)
{
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("config key '" + std::string(key) + "': cannot parse '" + text + "'");
    return value;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::vector<std::pair<std::string_view, Setter>>& setters()
{
    static const std::vector<std::pair<std::string_view, Setter>> table = {
        {"arch", [](auto& c, const auto& v) { c.architecture = parse_architecture(v); }},
        {"rows", [](auto& c, const auto& v) { c.scene.geometry.n_rows = parse_number<std::size_t>("rows", v); }},
        {"cols", [](auto& c, const auto& v) { c.scene.geometry.n_cols = parse_number<std::size_t>("cols", v); }},
        {"variation", [](auto& c, const auto& v) { c.variation = parse_number<double>("variation", v); }},
        {"seed", [](auto& c, const auto& v) { c.seed = parse_number<std::uint64_t>("seed", v); }},
        {"threshold", [](auto& c, const auto& v) { c.threshold = parse_number<double>("threshold", v); }},
        {"delay",
         [](auto& c, const auto& v) {
             c.delay = parse_number<std::size_t>("delay", v);
             c.scene.delay = c.delay;
         }},
        {"filter", [](auto& c, const auto& v) { c.filter = parse_filter(v); }},
        {"out", [](auto& c, const auto& v) { c.output_dir = v; }},
        {"threads", [](auto& c, const auto& v) { c.threads = parse_number<unsigned>("threads", v); }},
        {"inputs",
         [](auto& c, const auto& v) {
             c.inputs.clear();
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ','))
                 if (auto t = trim(item); !t.empty())
                     c.inputs.emplace_back(t);
         }},
        {"r1", [](auto& c, const auto& v) { c.circuit.r1 = parse_number<double>("r1", v); }},
        {"r2", [](auto& c, const auto& v) { c.circuit.r2 = parse_number<double>("r2", v); }},
        {"r3", [](auto& c, const auto& v) { c.circuit.r3 = parse_number<double>("r3", v); }},
        {"r4", [](auto& c, const auto& v) { c.circuit.r4 = parse_number<double>("r4", v); }},
        {"vdd", [](auto& c, const auto& v) { c.circuit.v_dd = parse_number<double>("vdd", v); }},
        {"ron", [](auto& c, const auto& v) { c.circuit.r_on_nominal = parse_number<double>("ron", v); }},
        {"roff", [](auto& c, const auto& v) { c.circuit.r_off_nominal = parse_number<double>("roff", v); }},
        {"power_w", [](auto& c, const auto& v) { c.costs.per_circuit_power_w = parse_number<double>("power_w", v); }},
        {"area_um2",
         [](auto& c, const auto& v) { c.costs.per_circuit_area_um2 = parse_number<double>("area_um2", v); }},
        {"settle_s", [](auto& c, const auto& v) { c.costs.row_settle_time_s = parse_number<double>("settle_s", v); }},
        {"object_rows",
         [](auto& c, const auto& v) { c.scene.object_rows = parse_number<std::size_t>("object_rows", v); }},
        {"object_cols",
         [](auto& c, const auto& v) { c.scene.object_cols = parse_number<std::size_t>("object_cols", v); }},
        {"start_row", [](auto& c, const auto& v) { c.scene.start_row = parse_number<std::ptrdiff_t>("start_row", v); }},
        {"start_col", [](auto& c, const auto& v) { c.scene.start_col = parse_number<std::ptrdiff_t>("start_col", v); }},
        {"velocity_rows",
         [](auto& c, const auto& v) { c.scene.velocity_rows = parse_number<std::ptrdiff_t>("velocity_rows", v); }},
        {"velocity_cols",
         [](auto& c, const auto& v) { c.scene.velocity_cols = parse_number<std::ptrdiff_t>("velocity_cols", v); }},
        {"frames", [](auto& c, const auto& v) { c.scene.frames = parse_number<std::size_t>("frames", v); }},
        {"foreground", [](auto& c, const auto& v) { c.scene.foreground = parse_number<int>("foreground", v); }},
        {"background", [](auto& c, const auto& v) { c.scene.background = parse_number<int>("background", v); }},
    };
    return table;
}

} // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source)
{
    KeyValues out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(source + ":" + std::to_string(lineno) + ": empty key");
        out[std::move(key)] = std::move(value);
    }
    return out;
}

KeyValues read_key_values(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open config file");
    return parse_key_values(f, path.string());
}

const std::vector<std::string_view>& config_keys()
{
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& [name, _] : setters())
            k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_key_values(ExperimentConfig& config, const KeyValues& values)
{
    for (const auto& [key, value] : values) {
        const auto& table = setters();
        auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == key; });
        if (it == table.end())
            throw std::invalid_argument("unknown config key '" + key + "'");
        it->second(config, value);
    }
}

} // namespace memsense
