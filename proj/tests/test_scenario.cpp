#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qexciton/errors.hpp"
#include "qexciton/scenario.hpp"

using namespace qexc;
namespace fs = std::filesystem;

namespace
{

const char* kSingle = R"({
  "kind": "single",
  "params": {"omega": "1.75eV", "omega_ex": "1.75eV", "g": "200ueV",
             "gamma_ex": "20µeV", "gamma_ph": "0.04meV", "alpha_sq": 9, "q": 1.01, "n": 1},
  "grid": {"start": 1.749, "stop": "1751meV", "points": 201},
  "output": "single.csv"
})";

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::path(QEXC_WORK_DIR) / "scenario" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST(Energy, Units)
{
    EXPECT_EQ(parse_energy("1.75"), 1.75);
    EXPECT_EQ(parse_energy("1.75eV"), 1.75);
    EXPECT_DOUBLE_EQ(parse_energy("200meV"), 0.2);
    EXPECT_DOUBLE_EQ(parse_energy("200ueV"), 2e-4);
    EXPECT_DOUBLE_EQ(parse_energy("200µeV"), 2e-4);
    EXPECT_DOUBLE_EQ(parse_energy("200μeV"), 2e-4);
    EXPECT_THROW(parse_energy("1.75 GeV"), ConfigError);
    EXPECT_THROW(parse_energy("eV"), ConfigError);
    EXPECT_THROW(parse_energy(""), ConfigError);
}

TEST(Energy, FormatRoundTrip)
{
    for (double v : {1.75, 2e-4, 0.1 + 0.2, 1.5740000000000001})
    {
        EXPECT_EQ(parse_energy(format_energy(v)), v);
    }
}

TEST(Config, ParsesSingleMode)
{
    const auto c = parse_config(kSingle);
    EXPECT_EQ(c.kind, ScenarioKind::single);
    const auto& b = std::get<SingleModeBlock>(c.params);
    EXPECT_DOUBLE_EQ(b.system.g, 2e-4);
    EXPECT_DOUBLE_EQ(b.system.gamma_ph, 4e-5);
    EXPECT_EQ(b.n, 1);
    EXPECT_EQ(c.grid.points, 201u);
    EXPECT_DOUBLE_EQ(c.grid.stop, 1.751);
    EXPECT_EQ(c.output, "single.csv");
}

TEST(ConfigProperty, SerializeRoundTrip)
{
    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"})
    {
        for (const auto& c : preset(name))
        {
            EXPECT_EQ(parse_config(serialize_config(c)), c) << c.output;
        }
    }
    const auto c = parse_config(kSingle);
    EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, Rejections)
{
    EXPECT_THROW(parse_config("{not json"), ConfigError);
    EXPECT_THROW(parse_config("[]"), ConfigError);
    std::string unknown = kSingle;
    unknown.replace(unknown.find("\"q\""), 3, "\"qq\"");
    EXPECT_THROW(parse_config(unknown), ConfigError);
    std::string kind = kSingle;
    kind.replace(kind.find("single"), 6, "triple");
    EXPECT_THROW(parse_config(kind), ConfigError);
    std::string grid = kSingle;
    grid.replace(grid.find("201"), 3, "1");
    EXPECT_THROW(parse_config(grid), ConfigError);
    std::string coupling = kSingle;
    coupling.replace(coupling.find("200ueV"), 6, "-1eV");
    EXPECT_THROW(parse_config(coupling), ConfigError);
}

TEST(Presets, Catalogue)
{
    EXPECT_EQ(preset("fig1").size(), 3u);
    EXPECT_EQ(preset("fig5").size(), 5u);
    for (const auto& c : preset("fig3"))
    {
        EXPECT_EQ(c.kind, ScenarioKind::two_mode);
    }
    for (const auto& c : preset("fig6"))
    {
        EXPECT_EQ(c.kind, ScenarioKind::absorption_third);
    }
    EXPECT_EQ(preset("fig1").front().output, "fig1_q1.000.csv");
    EXPECT_THROW(preset("fig9"), ConfigError);
}

TEST(Curves, CsvFormat)
{
    auto c = parse_config(kSingle);
    const auto curve = run_scenario(c);
    EXPECT_EQ(curve.column, "S");
    ASSERT_EQ(curve.omega.size(), 201u);
    const auto csv = to_csv(curve);
    EXPECT_EQ(csv.rfind("omega_eV,S\n", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
    EXPECT_NE(to_svg(curve).find("<polyline"), std::string::npos);
}

TEST(Curves, AbsorptionColumns)
{
    auto configs = preset("fig4");
    EXPECT_EQ(run_scenario(configs[1]).column, "alpha1");
    configs = preset("fig6");
    EXPECT_EQ(run_scenario(configs[1]).column, "alpha3");
}

TEST(Batch, IndependentOfThreadCount)
{
    const auto configs = preset("fig5");
    BatchOptions one;
    one.out_dir = scratch("one").string();
    one.threads = 1;
    BatchOptions many = one;
    many.out_dir = scratch("many").string();
    many.threads = 8;
    many.emit_config = true;
    const auto a = run_batch(configs, one);
    const auto b = run_batch(configs, many);
    ASSERT_EQ(a.size(), configs.size());
    ASSERT_EQ(b.size(), configs.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        EXPECT_EQ(slurp(a[i]), slurp(b[i]));
        EXPECT_TRUE(fs::exists(fs::path(b[i]).replace_extension(".json")));
    }
}

TEST(Batch, FirstErrorRethrown)
{
    auto configs = preset("fig1");
    auto& b = std::get<SingleModeBlock>(configs[1].params);
    b.system.gamma_ex = 0.0;
    b.system.gamma_ph = 0.0;
    BatchOptions o;
    o.out_dir = scratch("error").string();
    o.threads = 4;
    EXPECT_THROW(run_batch(configs, o), ZeroLinewidthError);
}

TEST(Validation, ResponseChecksPass)
{
    for (const auto& c : response_checks(7, 20))
    {
        EXPECT_TRUE(c.passed()) << c.name << " " << c.max_deviation;
    }
}
