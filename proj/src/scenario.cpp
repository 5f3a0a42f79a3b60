#include "qexciton/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"

#include "qexciton/errors.hpp"
#include "qexciton/qalgebra.hpp"
#include "qexciton/qpolariton.hpp"

namespace qexc
{

namespace
{

using json = nlohmann::json;

struct UnitSuffix
{
    std::string_view suffix;
    double divisor;
};

// Longest suffixes first so that "meV" is not read as "eV".
constexpr UnitSuffix kUnits[] = {
    {"\xC2\xB5" "eV", 1e6},   // micro sign
    {"\xCE\xBC" "eV", 1e6},   // greek mu
    {"ueV", 1e6},
    {"meV", 1e3},
    {"eV", 1.0},
};

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    {
        text.remove_suffix(1);
    }
    return text;
}

// Reads the members of one JSON object and rejects any it was not asked for.
class Fields
{
public:
    Fields(const json& object, std::string where) : object_(object), where_(std::move(where))
    {
        if (!object_.is_object())
        {
            throw ConfigError(where_ + " must be a JSON object");
        }
    }

    bool has(const char* key) const { return object_.contains(key); }

    const json& get(const char* key)
    {
        if (!object_.contains(key))
        {
            throw ConfigError(where_ + "." + key + " is required");
        }
        used_.insert(key);
        return object_.at(key);
    }

    double energy(const char* key)
    {
        const json& value = get(key);
        if (value.is_number())
        {
            return value.get<double>();
        }
        if (value.is_string())
        {
            try
            {
                return parse_energy(value.get<std::string>());
            }
            catch (const ConfigError& e)
            {
                throw ConfigError(where_ + "." + key + ": " + e.what());
            }
        }
        throw ConfigError(where_ + "." + key + " must be a number or a string with an energy unit");
    }

    double energy(const char* key, double fallback) { return has(key) ? energy(key) : fallback; }

    double number(const char* key, double fallback)
    {
        if (!has(key))
        {
            return fallback;
        }
        const json& value = get(key);
        if (!value.is_number())
        {
            throw ConfigError(where_ + "." + key + " must be a number");
        }
        return value.get<double>();
    }

    int integer(const char* key, int fallback)
    {
        if (!has(key))
        {
            return fallback;
        }
        const json& value = get(key);
        if (!value.is_number_integer())
        {
            throw ConfigError(where_ + "." + key + " must be an integer");
        }
        return value.get<int>();
    }

    bool boolean(const char* key, bool fallback)
    {
        if (!has(key))
        {
            return fallback;
        }
        const json& value = get(key);
        if (!value.is_boolean())
        {
            throw ConfigError(where_ + "." + key + " must be true or false");
        }
        return value.get<bool>();
    }

    std::string text(const char* key, std::string fallback)
    {
        if (!has(key))
        {
            return fallback;
        }
        const json& value = get(key);
        if (!value.is_string())
        {
            throw ConfigError(where_ + "." + key + " must be a string");
        }
        return value.get<std::string>();
    }

    void finish() const
    {
        for (const auto& item : object_.items())
        {
            if (!used_.contains(item.key()))
            {
                throw ConfigError("unknown key " + where_ + "." + item.key());
            }
        }
    }

private:
    const json& object_;
    std::string where_;
    std::set<std::string> used_;
};

WidthMode parse_width(const std::string& name)
{
    if (name == "mean_damping")
    {
        return WidthMode::mean_damping;
    }
    if (name == "branch_imag")
    {
        return WidthMode::branch_imag;
    }
    throw ConfigError("width must be mean_damping or branch_imag, got '" + name + "'");
}

std::string width_name(WidthMode mode)
{
    return mode == WidthMode::mean_damping ? "mean_damping" : "branch_imag";
}

CoefficientForm parse_form(const std::string& name)
{
    if (name == "eigenvector")
    {
        return CoefficientForm::eigenvector;
    }
    if (name == "closed_form")
    {
        return CoefficientForm::closed_form;
    }
    throw ConfigError("coefficients must be eigenvector or closed_form, got '" + name + "'");
}

std::string form_name(CoefficientForm form)
{
    return form == CoefficientForm::eigenvector ? "eigenvector" : "closed_form";
}

SingleModeBlock read_single(Fields& f)
{
    SingleModeBlock b;
    b.system.omega = f.energy("omega");
    b.system.omega_ex = f.energy("omega_ex");
    b.system.g = f.energy("g");
    b.system.gamma_ex = f.energy("gamma_ex", 0.0);
    b.system.gamma_ph = f.energy("gamma_ph", 0.0);
    b.system.alpha_sq = f.number("alpha_sq", 1.0);
    b.system.scale = f.number("scale", 1.0);
    b.q = f.number("q", 1.0);
    b.n = f.integer("n", 0);
    b.s = f.number("s", 1.0);
    b.n_k = f.integer("n_k", 0);
    b.width = parse_width(f.text("width", "mean_damping"));
    return b;
}

TwoModeBlock read_two_mode(Fields& f)
{
    TwoModeBlock b;
    auto& p = b.params;
    p.omega = f.energy("omega");
    p.omega_ex1 = f.energy("omega_ex1");
    p.omega_ex2 = f.energy("omega_ex2");
    p.g = f.energy("g");
    p.gamma_ex1 = f.energy("gamma_ex1", 0.0);
    p.gamma_ex2 = f.energy("gamma_ex2", 0.0);
    p.gamma_ph = f.energy("gamma_ph", 0.0);
    p.q1 = f.number("q1", 1.0);
    p.q2 = f.number("q2", 1.0);
    p.n1 = f.integer("n1", 0);
    p.n2 = f.integer("n2", 0);
    p.alpha_sq = f.number("alpha_sq", 1.0);
    p.scale = f.number("scale", 1.0);
    b.width = parse_width(f.text("width", "branch_imag"));
    b.form = parse_form(f.text("coefficients", "eigenvector"));
    return b;
}

ResponseParams read_response(Fields& f)
{
    ResponseParams r;
    r.omega = f.energy("omega");
    r.omega_ex = f.energy("omega_ex");
    r.g = f.energy("g");
    r.q = f.number("q", 1.0);
    r.dipole = f.number("dipole", 1.0);
    r.eta = f.energy("eta", r.eta);
    if (f.has("n_max"))
    {
        const json& value = f.get("n_max");
        if (value.is_number_integer())
        {
            r.n_max = value.get<int>();
        }
        else if (!(value.is_string() && value.get<std::string>() == "auto"))
        {
            throw ConfigError("params.n_max must be an integer or \"auto\"");
        }
    }
    r.normalize = f.boolean("normalize", true);
    return r;
}

json write_params(const SingleModeBlock& b)
{
    return {
        {"omega", format_energy(b.system.omega)},
        {"omega_ex", format_energy(b.system.omega_ex)},
        {"g", format_energy(b.system.g)},
        {"gamma_ex", format_energy(b.system.gamma_ex)},
        {"gamma_ph", format_energy(b.system.gamma_ph)},
        {"alpha_sq", b.system.alpha_sq},
        {"scale", b.system.scale},
        {"q", b.q},
        {"n", b.n},
        {"s", b.s},
        {"n_k", b.n_k},
        {"width", width_name(b.width)},
    };
}

json write_params(const TwoModeBlock& b)
{
    const auto& p = b.params;
    return {
        {"omega", format_energy(p.omega)},
        {"omega_ex1", format_energy(p.omega_ex1)},
        {"omega_ex2", format_energy(p.omega_ex2)},
        {"g", format_energy(p.g)},
        {"gamma_ex1", format_energy(p.gamma_ex1)},
        {"gamma_ex2", format_energy(p.gamma_ex2)},
        {"gamma_ph", format_energy(p.gamma_ph)},
        {"q1", p.q1},
        {"q2", p.q2},
        {"n1", p.n1},
        {"n2", p.n2},
        {"alpha_sq", p.alpha_sq},
        {"scale", p.scale},
        {"width", width_name(b.width)},
        {"coefficients", form_name(b.form)},
    };
}

json write_params(const ResponseParams& r)
{
    json out = {
        {"omega", format_energy(r.omega)},
        {"omega_ex", format_energy(r.omega_ex)},
        {"g", format_energy(r.g)},
        {"q", r.q},
        {"dipole", r.dipole},
        {"eta", format_energy(r.eta)},
        {"normalize", r.normalize},
    };
    out["n_max"] = r.n_max ? json(*r.n_max) : json("auto");
    return out;
}

bool is_absorption(ScenarioKind kind)
{
    return kind == ScenarioKind::absorption_linear || kind == ScenarioKind::absorption_third;
}

std::size_t expected_block(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::single:
    case ScenarioKind::qpol:
        return 0;
    case ScenarioKind::two_mode:
        return 1;
    default:
        return 2;
    }
}

std::string format_g17(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_q(const char* prefix, const char* variable, double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%s_%s%.3f.csv", prefix, variable, value);
    return buffer;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << contents;
    if (!out)
    {
        throw ConfigError("failed writing " + path.string());
    }
}

} // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::single:
        return "single";
    case ScenarioKind::qpol:
        return "qpol";
    case ScenarioKind::two_mode:
        return "two_mode";
    case ScenarioKind::absorption_linear:
        return "absorption_linear";
    case ScenarioKind::absorption_third:
        return "absorption_third";
    }
    return "unknown";
}

ScenarioKind parse_kind(std::string_view name)
{
    for (ScenarioKind kind : {ScenarioKind::single, ScenarioKind::qpol, ScenarioKind::two_mode,
                              ScenarioKind::absorption_linear, ScenarioKind::absorption_third})
    {
        if (name == to_string(kind))
        {
            return kind;
        }
    }
    throw ConfigError("unknown scenario kind '" + std::string(name) + "'");
}

double parse_energy(std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
    {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin)
    {
        throw ConfigError("cannot read an energy from '" + std::string(text) + "'");
    }
    const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
    if (suffix.empty())
    {
        return value;
    }
    for (const auto& unit : kUnits)
    {
        if (suffix == unit.suffix)
        {
            return unit.divisor == 1.0 ? value : value / unit.divisor;
        }
    }
    throw ConfigError("unknown energy unit '" + std::string(suffix) + "' (use eV, meV or ueV)");
}

std::string format_energy(double ev)
{
    return format_g17(ev) + "eV";
}

void ScenarioConfig::validate() const
{
    if (grid.points < 2)
    {
        throw ConfigError("grid.points must be at least 2");
    }
    if (!(std::isfinite(grid.start) && std::isfinite(grid.stop) && grid.start < grid.stop))
    {
        throw ConfigError("grid.start must be below grid.stop");
    }
    if (params.index() != expected_block(kind))
    {
        throw ConfigError("parameter block does not match scenario kind " + std::string(to_string(kind)));
    }
    try
    {
        if (const auto* single = std::get_if<SingleModeBlock>(&params))
        {
            single->system.validate();
            DeformationParams{single->q, single->s, single->n, single->n_k}.validate();
        }
        else if (const auto* two = std::get_if<TwoModeBlock>(&params))
        {
            two->params.validate();
        }
        else
        {
            ResponseParams r = std::get<ResponseParams>(params);
            r.grid = EnergyGrid(std::vector<double>{grid.start});
            r.validate();
        }
    }
    catch (const DomainError& e)
    {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
}

ScenarioConfig parse_config(std::string_view json_text)
{
    json root;
    try
    {
        root = json::parse(json_text.begin(), json_text.end());
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }

    try
    {
        Fields top(root, "config");
        ScenarioConfig config;
        config.kind = parse_kind(top.text("kind", ""));

        Fields params(top.get("params"), "params");
        if (config.kind == ScenarioKind::two_mode)
        {
            config.params = read_two_mode(params);
        }
        else if (is_absorption(config.kind))
        {
            config.params = read_response(params);
        }
        else
        {
            config.params = read_single(params);
        }
        params.finish();

        Fields grid(top.get("grid"), "grid");
        config.grid.start = grid.energy("start");
        config.grid.stop = grid.energy("stop");
        const int points = grid.integer("points", 0);
        if (points < 2)
        {
            throw ConfigError("grid.points must be an integer >= 2");
        }
        config.grid.points = static_cast<std::size_t>(points);
        grid.finish();

        config.output = top.text("output", std::string(to_string(config.kind)) + ".csv");
        top.finish();
        config.validate();
        return config;
    }
    catch (const json::exception& e)
    {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

std::string serialize_config(const ScenarioConfig& config)
{
    json root;
    root["kind"] = std::string(to_string(config.kind));
    root["params"] = std::visit([](const auto& block) { return write_params(block); }, config.params);
    root["grid"] = {
        {"start", format_energy(config.grid.start)},
        {"stop", format_energy(config.grid.stop)},
        {"points", config.grid.points},
    };
    root["output"] = config.output;
    return root.dump(2) + "\n";
}

Curve run_scenario(const ScenarioConfig& config)
{
    config.validate();
    const auto grid = EnergyGrid::linspace(config.grid.start, config.grid.stop, config.grid.points);
    Curve curve;
    curve.omega.assign(grid.points().begin(), grid.points().end());

    switch (config.kind)
    {
    case ScenarioKind::single:
    {
        const auto& b = std::get<SingleModeBlock>(config.params);
        curve.column = "S";
        curve.values = emission_spectrum(b.system, b.q, b.n, grid, b.width).values;
        break;
    }
    case ScenarioKind::qpol:
    {
        const auto& b = std::get<SingleModeBlock>(config.params);
        curve.column = "S";
        curve.values = deformed_emission_spectrum(b.system, b.q, b.n, b.s, b.n_k, grid, b.width).values;
        break;
    }
    case ScenarioKind::two_mode:
    {
        const auto& b = std::get<TwoModeBlock>(config.params);
        curve.column = "S";
        curve.values = two_exciton_spectrum(b.params, grid, b.width, b.form).values;
        break;
    }
    case ScenarioKind::absorption_linear:
    case ScenarioKind::absorption_third:
    {
        ResponseParams r = std::get<ResponseParams>(config.params);
        r.grid = grid;
        if (config.kind == ScenarioKind::absorption_linear)
        {
            curve.column = "alpha1";
            curve.values = linear_susceptibility(r).alpha1;
        }
        else
        {
            curve.column = "alpha3";
            curve.values = third_order_absorption(r).alpha3;
        }
        break;
    }
    }
    return curve;
}

std::string to_csv(const Curve& curve)
{
    std::string out = "omega_eV," + curve.column + "\n";
    for (std::size_t i = 0; i < curve.omega.size(); ++i)
    {
        out += format_g17(curve.omega[i]) + "," + format_g17(curve.values[i]) + "\n";
    }
    return out;
}

std::string to_svg(const Curve& curve)
{
    constexpr double width = 640.0, height = 400.0, margin = 50.0;
    const auto [xmin, xmax] = std::minmax_element(curve.omega.begin(), curve.omega.end());
    const auto [ymin, ymax] = std::minmax_element(curve.values.begin(), curve.values.end());
    const double x0 = *xmin, x1 = *xmax;
    const double y0 = std::min(0.0, *ymin);
    const double y1 = *ymax > y0 ? *ymax : y0 + 1.0;

    char buffer[128];
    std::string out;
    std::snprintf(buffer, sizeof buffer,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", width, height);
    out += buffer;
    std::snprintf(buffer, sizeof buffer,
                  "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n",
                  margin, margin, width - 2 * margin, height - 2 * margin);
    out += buffer;
    out += "<polyline fill=\"none\" stroke=\"blue\" points=\"";
    for (std::size_t i = 0; i < curve.omega.size(); ++i)
    {
        const double px = margin + (curve.omega[i] - x0) / (x1 - x0) * (width - 2 * margin);
        const double py = height - margin - (curve.values[i] - y0) / (y1 - y0) * (height - 2 * margin);
        std::snprintf(buffer, sizeof buffer, "%s%.2f,%.2f", i == 0 ? "" : " ", px, py);
        out += buffer;
    }
    out += "\"/>\n";
    std::snprintf(buffer, sizeof buffer, "<text x=\"%.0f\" y=\"%.0f\">omega_eV %.6g .. %.6g</text>\n", margin,
                  height - 15.0, x0, x1);
    out += buffer;
    std::snprintf(buffer, sizeof buffer, "<text x=\"%.0f\" y=\"%.0f\">%s max %.6g</text>\n", margin, 30.0,
                  curve.column.c_str(), y1);
    out += buffer;
    out += "</svg>\n";
    return out;
}

std::vector<ScenarioConfig> preset(std::string_view name)
{
    std::vector<ScenarioConfig> out;

    SystemParams fig12;
    fig12.omega = parse_energy("1.75eV");
    fig12.omega_ex = parse_energy("1.75eV");
    fig12.g = parse_energy("200ueV");
    fig12.gamma_ex = parse_energy("20ueV");
    fig12.gamma_ph = parse_energy("40ueV");
    fig12.alpha_sq = 9.0;
    const GridSpec single_grid{parse_energy("1.749eV"), parse_energy("1.751eV"), 4001};

    // Absorption presets: exciton at 1574 meV, cavity detuned to 1.5 eV.
    ResponseParams absorption;
    absorption.omega = parse_energy("1.5eV");
    absorption.omega_ex = parse_energy("1574meV");
    absorption.g = parse_energy("200ueV");
    absorption.eta = parse_energy("50ueV");
    const GridSpec absorption_grid{parse_energy("1573meV"), parse_energy("1575.5meV"), 2501};

    if (name == "fig1")
    {
        for (double q : {1.0, 1.01, 1.015})
        {
            SingleModeBlock b{fig12, q, 1, 1.0, 0, WidthMode::mean_damping};
            out.push_back({ScenarioKind::single, b, single_grid, format_q("fig1", "q", q)});
        }
    }
    else if (name == "fig2")
    {
        for (double s : {1.0, 1.007, 1.01})
        {
            SingleModeBlock b{fig12, 1.0, 1, s, 1, WidthMode::mean_damping};
            out.push_back({ScenarioKind::qpol, b, single_grid, format_q("fig2", "s", s)});
        }
    }
    else if (name == "fig3")
    {
        for (double q : {1.0, 1.04, 1.08})
        {
            TwoModeBlock b;
            b.params.omega = parse_energy("1.75eV");
            b.params.omega_ex1 = parse_energy("1.75eV");
            b.params.omega_ex2 = parse_energy("1.77eV");
            b.params.g = parse_energy("200ueV");
            b.params.gamma_ex1 = parse_energy("200ueV");
            b.params.gamma_ex2 = parse_energy("200ueV");
            b.params.gamma_ph = parse_energy("45ueV");
            b.params.q1 = q;
            b.params.q2 = q;
            b.params.n1 = 1;
            b.params.n2 = 1;
            b.params.alpha_sq = 9.0;
            const GridSpec grid{parse_energy("1.745eV"), parse_energy("1.775eV"), 4001};
            out.push_back({ScenarioKind::two_mode, b, grid, format_q("fig3", "q", q)});
        }
    }
    else if (name == "fig4" || name == "fig6")
    {
        const auto kind = name == "fig4" ? ScenarioKind::absorption_linear : ScenarioKind::absorption_third;
        for (double q : {0.99, 1.0, 1.01})
        {
            ResponseParams r = absorption;
            r.q = q;
            out.push_back({kind, r, absorption_grid, format_q(name == "fig4" ? "fig4" : "fig6", "q", q)});
        }
    }
    else if (name == "fig5")
    {
        for (double q : {0.99, 0.995, 1.0, 1.005, 1.01})
        {
            ResponseParams r = absorption;
            r.q = q;
            out.push_back({ScenarioKind::absorption_linear, r, absorption_grid, format_q("fig5", "q", q)});
        }
    }
    else
    {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1 .. fig6)");
    }
    return out;
}

std::vector<std::string> run_batch(const std::vector<ScenarioConfig>& configs, const BatchOptions& options)
{
    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<std::string> paths(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++)
        {
            try
            {
                const auto& config = configs[i];
                const Curve curve = run_scenario(config);
                const auto csv = dir / config.output;
                write_file(csv, to_csv(curve));
                if (options.svg)
                {
                    write_file(std::filesystem::path(csv).replace_extension(".svg"), to_svg(curve));
                }
                if (options.emit_config)
                {
                    write_file(std::filesystem::path(csv).replace_extension(".json"), serialize_config(config));
                }
                paths[i] = csv.string();
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t threads =
        std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(configs.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
        worker();
    }
    for (const auto& error : errors)
    {
        if (error)
        {
            std::rethrow_exception(error);
        }
    }
    return paths;
}

std::vector<CheckResult> response_checks(std::uint64_t seed, int draws)
{
    constexpr std::uint64_t tag_response = 5;
    Tracker quadratic("response.quadratic_zero", 0.0);
    Tracker inversion("response.q_inversion", 1e-12);
    Tracker truncation("response.truncation_stability", kTruncationBound);

    auto relative = [](const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
        double diff = 0.0, size = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            diff = std::max(diff, std::abs(a[i] - b[i]));
            size = std::max(size, std::abs(a[i]));
        }
        return size > 0.0 ? diff / size : diff;
    };

    for (int draw = 0; draw < draws; ++draw)
    {
        DrawStream s(seed, tag_response, draw);
        ResponseParams p;
        p.omega = s.uniform(1.3, 1.5);
        p.omega_ex = s.uniform(1.55, 1.6);
        p.g = s.uniform(5e-5, 3e-4);
        p.q = s.deformation(0.02);
        p.dipole = s.uniform(0.5, 2.0);
        p.eta = s.uniform(30e-6, 100e-6);
        p.grid = EnergyGrid::linspace(p.omega_ex - 10.0 * p.eta, p.omega_ex + 10.0 * p.eta, 41);

        quadratic.guarded(draw, [&] {
            double worst = 0.0;
            for (const auto& value : quadratic_response(p))
            {
                worst = std::max(worst, std::abs(value));
            }
            return worst;
        });

        inversion.guarded(draw, [&] {
            ResponseParams inverse = p;
            inverse.q = 1.0 / p.q;
            const auto a = susceptibility(p);
            const auto b = susceptibility(inverse);
            return std::max(relative(a.chi1, b.chi1), relative(a.chi3, b.chi3));
        });

        truncation.guarded(draw, [&] {
            const auto automatic = susceptibility(p);
            ResponseParams shorter = p;
            ResponseParams longer = p;
            shorter.n_max = automatic.terms_used - 1;
            longer.n_max = automatic.terms_used + 4;
            const auto a = susceptibility(shorter);
            const auto b = susceptibility(longer);
            return std::max(relative(a.chi1, b.chi1), relative(a.chi3, b.chi3));
        });
    }
    return {quadratic.result(), inversion.result(), truncation.result()};
}

ValidationReport full_validation(std::uint64_t seed, int draws)
{
    auto report = validate_closed_forms(seed, draws);
    const auto extra = response_checks(seed, std::min(draws, 100));
    report.checks.insert(report.checks.end(), extra.begin(), extra.end());
    return report;
}

} // namespace qexc
