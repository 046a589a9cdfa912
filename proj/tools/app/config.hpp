#pragma once

#include "minecast/datasets.hpp"
#include "minecast/market_model.hpp"
#include "minecast/projection.hpp"
#include "minecast/sensitivity.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace minecast::app {

struct DatasetPaths
{
    std::filesystem::path pools;
    std::optional<std::filesystem::path> pool_regions;
    std::filesystem::path ef_world;
    std::filesystem::path ef_china_grids;
    std::optional<std::filesystem::path> province_generation;
};

struct TrajectorySpec
{
    TrajectoryKind kind = TrajectoryKind::Exponential;
    double rate         = 0.0;
    std::filesystem::path file;
};

/// Parsed configuration file. See configs/base.json for the schema.
struct AppConfig
{
    // market: exactly one of v0 | calibration target, one of beta | gold
    std::optional<double> v0;
    std::optional<double> calibration_target_twh;
    double gamma = 0.06;
    std::optional<double> beta;
    std::optional<GoldOtcParams> gold;

    CostShareParams cost;
    IssuanceParams issuance;

    // carbon: exactly one of ef0 | datasets
    std::optional<double> ef0;
    std::optional<DatasetPaths> datasets;
    std::string scenario = "s550";
    std::map<std::string, TrajectorySpec> trajectories;
    int horizon_year = 2100;

    std::optional<double> sensitivity_theta;
    double fd_step = 1e-4;
    std::vector<std::pair<Parameter, std::vector<double>>> sweeps;

    std::filesystem::path output_dir = "out";
    std::set<std::string> formats    = {"csv", "json"};
};

/// Bundled dataset directory, overridden by the MINECAST_DATA environment variable.
std::filesystem::path data_directory();

/// The reference case: calibrated to 49 TWh in 2020, bundled datasets, 550 scenario.
AppConfig default_config();

/// Throws ConfigError naming the offending field.
AppConfig parse_config(std::string_view json, const std::string& source);
AppConfig load_config(const std::filesystem::path& path);

/// Relative paths resolve against the data directory.
std::filesystem::path resolve_data_path(const std::filesystem::path& path, const std::filesystem::path& dataDir);

double resolve_beta(const AppConfig& config);

EmissionFactorInputs load_emission_factor_inputs(const DatasetPaths& paths, const std::filesystem::path& dataDir);

ScenarioTrajectory resolve_trajectory(const AppConfig& config, const std::string& name, const std::filesystem::path& dataDir);

struct ResolvedScenario
{
    ScenarioConfig scenario;
    std::optional<EmissionFactorResult> emission_factor;
    std::string name;
};

/// Turns the configuration into a runnable scenario: fee ratio, EF(0) and the
/// calibrated V(0). The horizon is horizon_year unless overridden.
ResolvedScenario resolve_scenario(const AppConfig& config,
                                  const std::string& name,
                                  const std::filesystem::path& dataDir,
                                  std::optional<int> horizonYear = std::nullopt);

}
