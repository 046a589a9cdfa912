#include "app/cli.hpp"
#include "app/config.hpp"

#include "minecast/csv.hpp"
#include "minecast/datasets.hpp"
#include "minecast/error.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace minecast::test {

using namespace doctest;
namespace fs = std::filesystem;

namespace {

const fs::path dataDir   = MINECAST_TEST_DATA_DIR;
const fs::path configDir = MINECAST_TEST_CONFIG_DIR;

struct RunResult
{
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = app::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("minecast_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

nlohmann::json read_json(const fs::path& path)
{
    return nlohmann::json::parse(slurp(path));
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text)
{
    fs::create_directories(dir);
    std::ofstream(dir / name, std::ios::binary) << text;
    return dir / name;
}

}

TEST_CASE("Project command")
{
    const auto out = fresh_dir("project");
    const auto r   = run({"--config", (configDir / "base.json").string(), "--out", out.string(), "--format", "csv,json,svg", "project", "--scenario", "all"});
    REQUIRE_MESSAGE(r.code == 0, r.err);

    for (const char* name : {"projection_bau.csv", "projection_s450.csv", "projection_s550.csv", "block_reward_only_bau.csv",
                             "summary_bau.json", "summary_s550.json", "fig1.svg", "fig3.svg"}) {
        CHECK_MESSAGE(fs::exists(out / name), name);
    }

    const auto bau = read_json(out / "summary_bau.json");
    CHECK(bau["cumulative_to_2100_mt"].get<double>() == Approx(2000.0).epsilon(0.15));
    CHECK(bau["ef0_kg_kwh"].get<double>() == Approx(0.46).epsilon(0.03 / 0.46));
    CHECK(bau["electricity_2020_twh"].get<double>() == Approx(49.0));
    CHECK(bau["neutral_year"].is_null());

    const auto s550 = read_json(out / "summary_s550.json");
    CHECK(s550["cumulative_mt"].get<double>() < 200.0);
    CHECK(s550["neutral_year"].get<int>() == 2053);

    const auto series = read_projection_csv(out / "projection_bau.csv");
    CHECK(series.records.size() == 81);
    CHECK(series.at_year(2100).cumulative == Approx(bau["cumulative_to_2100_mt"].get<double>()).epsilon(1e-5));

    SUBCASE("Byte-identical reruns")
    {
        const auto again = fresh_dir("project_again");
        REQUIRE(run({"--config", (configDir / "base.json").string(), "--out", again.string(), "project", "--scenario", "all"}).code == 0);
        for (const char* name : {"projection_bau.csv", "summary_s450.json", "fig1.svg"}) {
            CHECK(slurp(out / name) == slurp(again / name));
        }
    }

    SUBCASE("Horizon 2140")
    {
        const auto dir = fresh_dir("project_2140");
        REQUIRE(run({"--out", dir.string(), "--horizon", "2140", "--format", "csv", "project", "--scenario", "s550"}).code == 0);
        const auto full = read_projection_csv(dir / "projection_s550.csv");
        CHECK(full.at_year(2140).electricity == Approx(4000.0).epsilon(0.2));
        CHECK_FALSE(fs::exists(dir / "summary_s550.json"));
    }
}

TEST_CASE("Emission factor command")
{
    const auto out = fresh_dir("ef");
    const auto r   = run({"--out", out.string(), "ef"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto doc = read_json(out / "ef0.json");
    CHECK(doc["ef0_kg_kwh"].get<double>() == Approx(0.46).epsilon(0.03 / 0.46));
    CHECK(doc["china_share"].get<double>() == Approx(0.75).epsilon(0.02 / 0.75));
    CHECK(std::abs(read_distribution_csv(out / "distribution.csv").total() - 1.0) < 1e-5);

    SUBCASE("Single pool in a single region")
    {
        const auto in = fresh_dir("ef_single_in");
        write_file(in, "pools.csv", "pool_id,blocks_mined,china_hashrate,row_hashrate\nSolo,10,0,5\n");
        write_file(in, "regions.csv", "pool_id,region_id,hashrate\nSolo,US,5\n");
        write_file(in, "world.csv", "region_id,ef_kg_per_kwh,vintage_year\nUS,0.4,2020\n");
        write_file(in, "grids.csv", "grid_id,om_factor,coal_share,provinces\nNORTH,1.0,0.9,Beijing\n");
        const auto dir = fresh_dir("ef_single");
        const auto res = run({"--out", dir.string(), "ef", "--pools", (in / "pools.csv").string(), "--pool-regions", (in / "regions.csv").string(),
                              "--ef-world", (in / "world.csv").string(), "--ef-china-grids", (in / "grids.csv").string()});
        REQUIRE_MESSAGE(res.code == 0, res.err);
        const auto dist = read_distribution_csv(dir / "distribution.csv");
        CHECK(dist.shares.size() == 1);
        CHECK(dist.shares.at("US") == 1.0);
        CHECK(read_json(dir / "ef0.json")["ef0_kg_kwh"].get<double>() == Approx(0.4));
    }

    SUBCASE("Missing emission factor")
    {
        const auto in = fresh_dir("ef_missing_in");
        write_file(in, "world.csv", "region_id,ef_kg_per_kwh,vintage_year\nUS,0.4,2017\n");
        const auto dir = fresh_dir("ef_missing");
        const auto res = run({"--out", dir.string(), "ef", "--ef-world", (in / "world.csv").string()});
        CHECK(res.code == 2);
        CHECK(res.err.find("region 'CA', which has no emission factor") != std::string::npos);
        CHECK_FALSE(fs::exists(dir));
    }
}

TEST_CASE("Sensitivity command")
{
    const auto out = fresh_dir("sensitivity");
    const auto r   = run({"--config", (configDir / "base.json").string(), "--out", out.string(), "sensitivity"});
    REQUIRE_MESSAGE(r.code == 0, r.err);

    const auto doc = read_json(out / "sensitivity.json");
    CHECK(doc["analytic"]["dlogE_dalpha"].get<double>() == Approx(1.0 / 0.6).epsilon(1e-5));
    CHECK(doc["analytic"]["dlogE_dgamma"].get<double>() == Approx(9.0).epsilon(0.15));
    CHECK(doc["analytic"]["neg_dlogE_dtheta"].get<double>() == Approx(29.0).epsilon(0.15));
    CHECK(doc["orderings"]["theta_over_gamma"].get<bool>());
    CHECK(doc["orderings"]["gamma_over_alpha"].get<bool>());
    CHECK(doc["max_relative_gap"].get<double>() < 1e-3);

    const auto alpha = doc["sweeps"]["alpha"];
    REQUIRE(alpha.size() == 3);
    CHECK(alpha[0]["cumulative_mt"].get<double>() < alpha[1]["cumulative_mt"].get<double>());
    CHECK(alpha[1]["cumulative_mt"].get<double>() < alpha[2]["cumulative_mt"].get<double>());

    const auto sweep = read_csv(out / "sweep_alpha.csv");
    CHECK(sweep.header() == std::vector<std::string>{"value", "year", "electricity_twh", "ef_kg_kwh", "emissions_mt", "cumulative_mt"});
    CHECK(sweep.rows().size() == 3 * 35);
    CHECK(fs::exists(out / "fig5.svg"));

    SUBCASE("One axis")
    {
        const auto dir = fresh_dir("sensitivity_axis");
        REQUIRE(run({"--out", dir.string(), "sensitivity", "--axis", "theta"}).code == 0);
        CHECK(fs::exists(dir / "sweep_theta.csv"));
        CHECK_FALSE(fs::exists(dir / "sweep_alpha.csv"));
    }

    SUBCASE("Zero emissions")
    {
        const auto cfg = write_file(fresh_dir("sens_zero_cfg"), "zero.json",
                                    R"({"carbon": {"ef0_kg_kwh": 0.0, "scenario": "custom"}, "sensitivity": {"theta": 0.03}})");
        const auto dir = fresh_dir("sens_zero");
        const auto res = run({"--config", cfg.string(), "--out", dir.string(), "sensitivity"});
        CHECK(res.code == 3);
        CHECK(res.err.find("log-derivative is undefined") != std::string::npos);
        CHECK_FALSE(fs::exists(dir));
    }

    SUBCASE("Exponential scenario without a theta")
    {
        const auto cfg = write_file(fresh_dir("sens_bau_cfg"), "bau.json", R"({"carbon": {"scenario": "bau"}})");
        CHECK(run({"--config", cfg.string(), "--out", fresh_dir("sens_bau").string(), "sensitivity"}).code == 1);
    }

    SUBCASE("Table scenario uses the fitted rate")
    {
        const auto cfg = write_file(fresh_dir("sens_s550_cfg"), "s550.json", R"({"carbon": {"scenario": "s550"}})");
        const auto dir = fresh_dir("sens_s550");
        REQUIRE(run({"--config", cfg.string(), "--out", dir.string(), "sensitivity"}).code == 0);
        CHECK(read_json(dir / "sensitivity.json")["theta"].get<double>() == Approx(0.0300535).epsilon(1e-5));
    }
}

TEST_CASE("Alpha and calibrate commands")
{
    const auto out = fresh_dir("alpha");
    REQUIRE(run({"--out", out.string(), "alpha"}).code == 0);
    const auto doc = read_json(out / "alpha.json");
    CHECK(doc["mean_alpha"].get<double>() == Approx(0.580020).epsilon(1e-6));
    CHECK(doc["count"].get<int>() == 8);
    CHECK(read_csv(out / "alpha.csv").rows().size() == 12);

    SUBCASE("Single row")
    {
        const auto in = write_file(fresh_dir("alpha_one_in"), "hw.csv",
                                   "name,release_year,efficiency_j_per_th,hashrate_ths,price_usd,electricity_price_usd_kwh,interest_rate,lifespan_years\n"
                                   "X,2018,50,50,2000,0.05,0.0435,1.5\n");
        const auto dir = fresh_dir("alpha_one");
        REQUIRE(run({"--out", dir.string(), "alpha", "--hardware", in.string()}).code == 0);
        CHECK(read_json(dir / "alpha.json")["mean_alpha"].get<double>() == Approx(0.440).epsilon(1e-3));
    }

    SUBCASE("Nothing after the cut-off year")
    {
        const auto dir = fresh_dir("alpha_late");
        CHECK(run({"--out", dir.string(), "alpha", "--from-year", "2050"}).code == 2);
        CHECK_FALSE(fs::exists(dir));
    }

    SUBCASE("Calibration")
    {
        const auto dir = fresh_dir("calibrate");
        REQUIRE(run({"--out", dir.string(), "calibrate"}).code == 0);
        const auto cal = read_json(dir / "calibration.json");
        CHECK(cal["v0_usd"].get<double>() > 1.5e11);
        CHECK(cal["v0_usd"].get<double>() < 2.5e11);
        CHECK(cal["fee_share_2020"].get<double>() == Approx(0.068).epsilon(0.005 / 0.068));

        const auto dir2 = fresh_dir("calibrate2");
        REQUIRE(run({"--out", dir2.string(), "calibrate", "--target-twh", "98"}).code == 0);
        CHECK(read_json(dir2 / "calibration.json")["v0_usd"].get<double>() == Approx(2.0 * cal["v0_usd"].get<double>()).epsilon(1e-5));
    }
}

TEST_CASE("Exit codes and messages")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--format", "pdf", "--out", fresh_dir("fmt").string(), "calibrate"}).code == 1);
    CHECK(run({"--horizon", "2000", "--out", fresh_dir("hz").string(), "project"}).code == 1);
    CHECK(run({"--config", "/no/such/config.json", "project"}).code == 1);
    CHECK(run({"--help"}).code == 0);

    const auto cfgDir = fresh_dir("bad_configs");
    auto expect_config_error = [&](const std::string& text, const std::string& fragment) {
        const auto file = write_file(cfgDir, "c.json", text);
        const auto res  = run({"--config", file.string(), "--out", fresh_dir("bad_out").string(), "project"});
        CHECK_MESSAGE(res.code == 1, text);
        CHECK_MESSAGE(res.err.find(fragment) != std::string::npos, res.err);
    };
    expect_config_error("{not json", "invalid JSON");
    expect_config_error(R"({"market": {"v0_usd": 1e11, "calibration_target_twh": 49}})", "not both");
    expect_config_error(R"({"market": {"beta": 0.001, "gold": {"rho": 1, "theta_share": 1, "phi": 0.001}}})", "not both");
    expect_config_error(R"({"carbon": {"ef0_kg_kwh": 0.4, "datasets": {"pools": "a", "ef_world": "b", "ef_china_grids": "c"}}})", "not both");
    expect_config_error(R"({"markt": {}})", "markt");
    expect_config_error(R"({"market": {"gamma": "fast"}})", "gamma");
    expect_config_error(R"({"energy": {"alpha": 1.2}})", "alpha");
    expect_config_error(R"({"carbon": {"scenario": "s999"}})", "s999");

    SUBCASE("Dataset errors name the file")
    {
        const auto file = write_file(cfgDir, "t.json", R"({"carbon": {"scenario": "x", "trajectories": {"x": {"kind": "table", "file": "/no/such/trajectory.csv"}}}})");
        const auto res  = run({"--config", file.string(), "--out", fresh_dir("bad_out2").string(), "project"});
        CHECK(res.code == 2);
        CHECK(res.err.find("trajectory.csv") != std::string::npos);
    }
}

TEST_CASE("Configuration parsing")
{
    const auto base = app::load_config(configDir / "base.json");
    CHECK(base.calibration_target_twh == 49.0);
    CHECK_FALSE(base.beta.has_value());
    REQUIRE(base.gold.has_value());
    CHECK(app::resolve_beta(base) == Approx(0.00175914).epsilon(1e-9));
    CHECK(base.sensitivity_theta == 0.03);
    CHECK(base.formats.count("svg") == 1);

    const auto direct = app::parse_config(R"({"market": {"v0_usd": 2e11, "beta": 0.0018}, "carbon": {"ef0_kg_kwh": 0.5, "scenario": "custom"}})", "inline");
    const auto resolved = app::resolve_scenario(direct, "custom", dataDir, std::nullopt);
    CHECK(resolved.scenario.market.v0 == 2e11);
    CHECK(resolved.scenario.ef0 == 0.5);
    CHECK_FALSE(resolved.emission_factor.has_value());
    CHECK(resolved.scenario.trajectory.kind() == TrajectoryKind::Linear);
}

}
