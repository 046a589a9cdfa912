#include "config.hpp"

#include "minecast/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MINECAST_DEFAULT_DATA_DIR
#define MINECAST_DEFAULT_DATA_DIR "data"
#endif

namespace minecast::app {

using nlohmann::json;

namespace {

class Section
{
public:
    Section(const json& node, std::string path, const std::string& source)
    : _node(node)
    , _path(std::move(path))
    , _source(source)
    {
        if (!_node.is_object()) {
            throw ConfigError("{}: '{}' must be an object", _source, _path);
        }
    }

    bool has(const char* key) const
    {
        return _node.contains(key) && !_node.at(key).is_null();
    }

    double number(const char* key) const
    {
        const auto& value = at(key);
        if (!value.is_number()) {
            throw ConfigError("{}: '{}.{}' must be a number", _source, _path, key);
        }
        return value.get<double>();
    }

    std::optional<double> optional_number(const char* key) const
    {
        return has(key) ? std::optional<double>(number(key)) : std::nullopt;
    }

    long long integer(const char* key) const
    {
        const auto& value = at(key);
        if (!value.is_number_integer()) {
            throw ConfigError("{}: '{}.{}' must be an integer", _source, _path, key);
        }
        return value.get<long long>();
    }

    std::string string(const char* key) const
    {
        const auto& value = at(key);
        if (!value.is_string()) {
            throw ConfigError("{}: '{}.{}' must be a string", _source, _path, key);
        }
        return value.get<std::string>();
    }

    Section section(const char* key) const
    {
        return Section(at(key), _path + "." + key, _source);
    }

    const json& at(const char* key) const
    {
        if (!has(key)) {
            throw ConfigError("{}: missing field '{}.{}'", _source, _path, key);
        }
        return _node.at(key);
    }

    void allow_only(std::initializer_list<const char*> keys) const
    {
        for (const auto& [key, value] : _node.items()) {
            bool known = false;
            for (const char* k : keys) {
                known = known || key == k;
            }
            if (!known) {
                throw ConfigError("{}: unknown field '{}.{}'", _source, _path, key);
            }
        }
    }

    const json& node() const
    {
        return _node;
    }

    const std::string& path() const
    {
        return _path;
    }

private:
    const json& _node;
    std::string _path;
    const std::string& _source;
};

void default_trajectories(AppConfig& config)
{
    config.trajectories["bau"]  = {TrajectoryKind::Exponential, bau_annual_reduction, {}};
    config.trajectories["s450"] = {TrajectoryKind::Table, 0.0, "trajectory_s450.csv"};
    config.trajectories["s550"] = {TrajectoryKind::Table, 0.0, "trajectory_s550.csv"};
    config.trajectories["custom"] = {TrajectoryKind::Linear, 0.03, {}};
}

DatasetPaths default_datasets()
{
    DatasetPaths paths;
    paths.pools               = "pools.csv";
    paths.pool_regions        = "pool_regions.csv";
    paths.ef_world            = "ef_world.csv";
    paths.ef_china_grids      = "ef_china_grids.csv";
    paths.province_generation = "china_province_generation.csv";
    return paths;
}

void parse_market(const Section& market, AppConfig& config, const std::string& source)
{
    market.allow_only({"v0_usd", "calibration_target_twh", "gamma", "beta", "gold"});

    if (market.has("v0_usd") && market.has("calibration_target_twh")) {
        throw ConfigError("{}: 'market' takes either 'v0_usd' or 'calibration_target_twh', not both", source);
    }
    if (market.has("v0_usd")) {
        config.v0 = market.number("v0_usd");
        config.calibration_target_twh.reset();
    } else if (market.has("calibration_target_twh")) {
        config.calibration_target_twh = market.number("calibration_target_twh");
    }

    if (market.has("gamma")) {
        config.gamma = market.number("gamma");
    }

    if (market.has("beta") && market.has("gold")) {
        throw ConfigError("{}: 'market' takes either 'beta' or 'gold', not both", source);
    }
    if (market.has("beta")) {
        config.beta = market.number("beta");
    } else if (market.has("gold")) {
        const auto gold = market.section("gold");
        gold.allow_only({"rho", "theta_share", "phi"});
        config.gold = GoldOtcParams{gold.number("rho"), gold.number("theta_share"), gold.number("phi")};
        config.beta.reset();
    }
}

void parse_carbon(const Section& carbon, AppConfig& config, const std::string& source)
{
    carbon.allow_only({"ef0_kg_kwh", "datasets", "scenario", "trajectories", "horizon_year"});

    if (carbon.has("ef0_kg_kwh") && carbon.has("datasets")) {
        throw ConfigError("{}: 'carbon' takes either 'ef0_kg_kwh' or 'datasets', not both", source);
    }
    if (carbon.has("ef0_kg_kwh")) {
        config.ef0 = carbon.number("ef0_kg_kwh");
        config.datasets.reset();
    } else if (carbon.has("datasets")) {
        const auto ds = carbon.section("datasets");
        ds.allow_only({"pools", "pool_regions", "ef_world", "ef_china_grids", "province_generation"});
        DatasetPaths paths;
        paths.pools          = ds.string("pools");
        paths.ef_world       = ds.string("ef_world");
        paths.ef_china_grids = ds.string("ef_china_grids");
        if (ds.has("pool_regions")) {
            paths.pool_regions = ds.string("pool_regions");
        }
        if (ds.has("province_generation")) {
            paths.province_generation = ds.string("province_generation");
        }
        config.datasets = std::move(paths);
    }

    if (carbon.has("scenario")) {
        config.scenario = carbon.string("scenario");
    }
    if (carbon.has("horizon_year")) {
        config.horizon_year = static_cast<int>(carbon.integer("horizon_year"));
    }

    if (carbon.has("trajectories")) {
        const auto trajectories = carbon.section("trajectories");
        for (const auto& [name, value] : trajectories.node().items()) {
            const auto spec = trajectories.section(name.c_str());
            const auto kind = spec.string("kind");
            TrajectorySpec parsed;
            if (kind == "exponential") {
                spec.allow_only({"kind", "rate"});
                parsed = {TrajectoryKind::Exponential, spec.number("rate"), {}};
            } else if (kind == "linear") {
                spec.allow_only({"kind", "theta"});
                parsed = {TrajectoryKind::Linear, spec.number("theta"), {}};
            } else if (kind == "table") {
                spec.allow_only({"kind", "file"});
                parsed = {TrajectoryKind::Table, 0.0, spec.string("file")};
            } else {
                throw ConfigError("{}: '{}.kind' must be exponential, linear or table (got '{}')", source, spec.path(), kind);
            }
            config.trajectories[name] = std::move(parsed);
        }
    }
}

void parse_sensitivity(const Section& sensitivity, AppConfig& config, const std::string& source)
{
    sensitivity.allow_only({"theta", "fd_step", "sweeps"});

    config.sensitivity_theta = sensitivity.optional_number("theta");
    if (sensitivity.has("fd_step")) {
        config.fd_step = sensitivity.number("fd_step");
    }
    if (sensitivity.has("sweeps")) {
        config.sweeps.clear();
        const auto sweeps = sensitivity.section("sweeps");
        for (const auto& [name, values] : sweeps.node().items()) {
            const auto parameter = parse_parameter(name);
            if (!parameter) {
                throw ConfigError("{}: unknown sweep parameter 'sensitivity.sweeps.{}'", source, name);
            }
            if (!values.is_array()) {
                throw ConfigError("{}: 'sensitivity.sweeps.{}' must be an array of numbers", source, name);
            }
            std::vector<double> list;
            for (const auto& v : values) {
                if (!v.is_number()) {
                    throw ConfigError("{}: 'sensitivity.sweeps.{}' must be an array of numbers", source, name);
                }
                list.push_back(v.get<double>());
            }
            config.sweeps.emplace_back(*parameter, std::move(list));
        }
    }
}

}

std::filesystem::path data_directory()
{
    if (const char* env = std::getenv("MINECAST_DATA"); env != nullptr && *env != '\0') {
        return env;
    }
    return MINECAST_DEFAULT_DATA_DIR;
}

AppConfig default_config()
{
    AppConfig config;
    config.calibration_target_twh = 49.0;
    config.beta                   = 0.0018;
    config.datasets               = default_datasets();
    default_trajectories(config);
    config.sensitivity_theta = 0.03;
    config.sweeps            = {
        {Parameter::Alpha, {0.5, 0.6, 0.7}},
        {Parameter::Gamma, {0.02, 0.06, 0.10}},
        {Parameter::Theta, {0.01, 0.03, 0.05}},
    };
    return config;
}

AppConfig parse_config(std::string_view text, const std::string& source)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("{}: invalid JSON: {}", source, e.what());
    }

    AppConfig config = default_config();
    config.sensitivity_theta.reset();

    const Section top(root, "config", source);
    top.allow_only({"market", "energy", "issuance", "carbon", "sensitivity", "output"});

    if (top.has("market")) {
        parse_market(top.section("market"), config, source);
    }

    if (top.has("energy")) {
        const auto energy = top.section("energy");
        energy.allow_only({"alpha", "p_ele_usd_kwh"});
        if (energy.has("alpha")) {
            config.cost.alpha = energy.number("alpha");
        }
        if (energy.has("p_ele_usd_kwh")) {
            config.cost.p_ele = energy.number("p_ele_usd_kwh");
        }
    }

    if (top.has("issuance")) {
        const auto issuance = top.section("issuance");
        issuance.allow_only({"initial_reward_btc", "halving_interval", "height_at_t0", "minted_at_t0_btc", "blocks_per_year"});
        if (issuance.has("initial_reward_btc")) {
            config.issuance.initial_reward = issuance.number("initial_reward_btc");
        }
        if (issuance.has("halving_interval")) {
            config.issuance.halving_interval = issuance.integer("halving_interval");
        }
        if (issuance.has("height_at_t0")) {
            config.issuance.height_at_t0 = issuance.integer("height_at_t0");
        }
        if (issuance.has("minted_at_t0_btc")) {
            config.issuance.minted_at_t0 = issuance.number("minted_at_t0_btc");
        }
        if (issuance.has("blocks_per_year")) {
            config.issuance.blocks_per_year = issuance.integer("blocks_per_year");
        }
    }

    if (top.has("carbon")) {
        parse_carbon(top.section("carbon"), config, source);
    }

    if (top.has("sensitivity")) {
        parse_sensitivity(top.section("sensitivity"), config, source);
    }

    if (top.has("output")) {
        const auto output = top.section("output");
        output.allow_only({"directory", "formats"});
        if (output.has("directory")) {
            config.output_dir = output.string("directory");
        }
        if (output.has("formats")) {
            const auto& formats = output.at("formats");
            if (!formats.is_array()) {
                throw ConfigError("{}: 'output.formats' must be an array", source);
            }
            config.formats.clear();
            for (const auto& f : formats) {
                if (!f.is_string() || (f != "csv" && f != "json" && f != "svg")) {
                    throw ConfigError("{}: 'output.formats' entries must be \"csv\", \"json\" or \"svg\"", source);
                }
                config.formats.insert(f.get<std::string>());
            }
        }
    }

    config.issuance.validate();
    config.cost.validate();
    return config;
}

AppConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '{}'", path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path, const std::filesystem::path& dataDir)
{
    return path.is_absolute() ? path : dataDir / path;
}

double resolve_beta(const AppConfig& config)
{
    if (config.gold) {
        config.gold->validate();
        return beta_from_gold(*config.gold);
    }
    return config.beta.value_or(0.0);
}

EmissionFactorInputs load_emission_factor_inputs(const DatasetPaths& paths, const std::filesystem::path& dataDir)
{
    EmissionFactorInputs inputs;
    inputs.pools = read_pools_csv(resolve_data_path(paths.pools, dataDir));
    if (paths.pool_regions) {
        read_pool_regions_csv(resolve_data_path(*paths.pool_regions, dataDir), inputs.pools);
    }
    inputs.world = read_ef_world_csv(resolve_data_path(paths.ef_world, dataDir));
    inputs.grids = read_ef_china_grids_csv(resolve_data_path(paths.ef_china_grids, dataDir));
    if (paths.province_generation) {
        inputs.province_generation = read_generation_csv(resolve_data_path(*paths.province_generation, dataDir));
    }
    return inputs;
}

ScenarioTrajectory resolve_trajectory(const AppConfig& config, const std::string& name, const std::filesystem::path& dataDir)
{
    auto it = config.trajectories.find(name);
    if (it == config.trajectories.end()) {
        throw ConfigError("unknown scenario '{}'", name);
    }
    const auto& spec = it->second;
    switch (spec.kind) {
    case TrajectoryKind::Exponential:
        return ScenarioTrajectory::exponential(spec.rate);
    case TrajectoryKind::Linear:
        return ScenarioTrajectory::linear(spec.rate);
    case TrajectoryKind::Table:
        break;
    }
    return read_trajectory_csv(resolve_data_path(spec.file, dataDir));
}

ResolvedScenario resolve_scenario(const AppConfig& config,
                                  const std::string& name,
                                  const std::filesystem::path& dataDir,
                                  std::optional<int> horizonYear)
{
    ResolvedScenario resolved;
    resolved.name = name;

    auto& scenario          = resolved.scenario;
    scenario.issuance       = config.issuance;
    scenario.cost           = config.cost;
    scenario.market.gamma   = config.gamma;
    scenario.market.beta    = resolve_beta(config);
    scenario.trajectory     = resolve_trajectory(config, name, dataDir);
    scenario.horizon        = horizonYear.value_or(config.horizon_year) - base_year;

    scenario.issuance.validate();
    scenario.cost.validate();

    if (config.v0) {
        scenario.market.v0 = *config.v0;
    } else {
        scenario.market.v0 = calibrate_v0(*config.calibration_target_twh,
                                          scenario.cost.alpha,
                                          scenario.cost.p_ele,
                                          scenario.market.beta,
                                          scenario.issuance);
    }

    if (config.ef0) {
        scenario.ef0 = *config.ef0;
    } else {
        resolved.emission_factor = build_emission_factor(load_emission_factor_inputs(*config.datasets, dataDir));
        scenario.ef0             = resolved.emission_factor->ef0;
    }

    scenario.validate();
    return resolved;
}

}
