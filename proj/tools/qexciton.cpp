#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "qexciton/errors.hpp"
#include "qexciton/scenario.hpp"

namespace
{

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw qexc::ConfigError("cannot read config file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Options
{
    std::string config;
    std::string out = ".";
    bool svg = false;
    bool emit_config = false;
    unsigned threads = 0;
    std::uint64_t seed = 20240101;
    int draws = 1000;
};

qexc::BatchOptions batch_options(const Options& o)
{
    qexc::BatchOptions b;
    b.out_dir = o.out;
    b.svg = o.svg;
    b.emit_config = o.emit_config;
    b.threads = o.threads > 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    return b;
}

int run_config(const Options& o, qexc::ScenarioKind expected)
{
    auto config = qexc::parse_config(read_file(o.config));
    if (config.kind != expected)
    {
        throw qexc::ConfigError("config kind " + std::string(qexc::to_string(config.kind)) +
                                " does not match the subcommand (" + std::string(qexc::to_string(expected)) + ")");
    }
    for (const auto& path : qexc::run_batch({config}, batch_options(o)))
    {
        std::cout << path << "\n";
    }
    return 0;
}

int run_validate(const Options& o)
{
    const auto report = qexc::full_validation(o.seed, o.draws);
    const std::string text = report.to_text();
    std::filesystem::create_directories(o.out);
    const auto path = std::filesystem::path(o.out) / "validate_report.txt";
    std::ofstream(path, std::ios::binary) << text;
    std::cout << text;
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-deformed exciton-polariton spectra and absorption"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output directory");
        sub->add_flag("--svg", o.svg, "also write an SVG polyline per CSV");
    };
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "scenario JSON")->required();
        add_output(sub);
    };

    auto* spectrum = app.add_subcommand("spectrum", "emission spectrum of one scenario");
    spectrum->require_subcommand(1);
    auto* single = spectrum->add_subcommand("single", "one exciton mode");
    auto* qpol = spectrum->add_subcommand("qpol", "s-deformed polaritons");
    auto* two = spectrum->add_subcommand("two-mode", "two exciton modes");
    for (auto* sub : {single, qpol, two})
    {
        add_config(sub);
    }

    auto* absorb = app.add_subcommand("absorb", "absorption spectrum of one scenario");
    absorb->require_subcommand(1);
    auto* linear = absorb->add_subcommand("linear", "linear absorption alpha1");
    auto* third = absorb->add_subcommand("third", "third-order absorption alpha3");
    for (auto* sub : {linear, third})
    {
        add_config(sub);
    }

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "preset parameter sets fig1 .. fig6");
    preset->add_option("name", preset_name, "fig1 .. fig6")->required();
    add_output(preset);
    preset->add_option("--threads", o.threads, "worker threads (default: hardware)");
    preset->add_flag("--emit-config", o.emit_config, "write the scenario JSON next to each CSV");

    auto* validate = app.add_subcommand("validate", "closed forms against the matrix oracles");
    validate->add_option("--seed", o.seed, "sweep seed");
    validate->add_option("--draws", o.draws, "random draws per sweep")->check(CLI::PositiveNumber);
    validate->add_option("--out", o.out, "directory for validate_report.txt");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try
    {
        if (*single)
        {
            return run_config(o, qexc::ScenarioKind::single);
        }
        if (*qpol)
        {
            return run_config(o, qexc::ScenarioKind::qpol);
        }
        if (*two)
        {
            return run_config(o, qexc::ScenarioKind::two_mode);
        }
        if (*linear)
        {
            return run_config(o, qexc::ScenarioKind::absorption_linear);
        }
        if (*third)
        {
            return run_config(o, qexc::ScenarioKind::absorption_third);
        }
        if (*preset)
        {
            for (const auto& path : qexc::run_batch(qexc::preset(preset_name), batch_options(o)))
            {
                std::cout << path << "\n";
            }
            return 0;
        }
        return run_validate(o);
    }
    catch (const qexc::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const qexc::DomainError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const qexc::ZeroLinewidthError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    catch (const std::exception& e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
