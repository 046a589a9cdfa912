#include "minecast/datasets.hpp"

#include "minecast/csv.hpp"
#include "minecast/error.hpp"

#include <algorithm>
#include <set>

namespace minecast {

std::vector<HardwareSpec> read_hardware_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto name     = table.column("name");
    const auto year     = table.column("release_year");
    const auto eff      = table.column("efficiency_j_per_th");
    const auto hashrate = table.column("hashrate_ths");
    const auto price    = table.column("price_usd");
    const auto elePrice = table.column("electricity_price_usd_kwh");
    const auto rate     = table.column("interest_rate");
    const auto lifespan = table.column("lifespan_years");

    std::vector<HardwareSpec> specs;
    for (const auto& row : table.rows()) {
        HardwareSpec spec;
        spec.name              = table.field(row, name);
        spec.release_year      = static_cast<int>(table.integer(row, year));
        spec.efficiency        = table.number(row, eff);
        spec.hashrate          = table.number(row, hashrate);
        spec.release_price     = table.number(row, price);
        spec.electricity_price = table.number(row, elePrice);
        spec.interest_rate     = table.number(row, rate);
        spec.lifespan          = table.number(row, lifespan);
        spec.validate();
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<PoolReport> read_pools_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto id     = table.column("pool_id");
    const auto blocks = table.column("blocks_mined");
    const auto china  = table.column("china_hashrate");
    const auto row    = table.column("row_hashrate");

    std::vector<PoolReport> pools;
    for (const auto& r : table.rows()) {
        PoolReport report;
        report.pool_id        = table.field(r, id);
        report.blocks_mined   = table.number(r, blocks);
        report.china_hashrate = table.number(r, china);
        report.row_hashrate   = table.number(r, row);
        if (report.pool_id.empty()) {
            throw DatasetError("{}:{}: empty pool_id", table.source(), r.line);
        }
        pools.push_back(std::move(report));
    }
    if (pools.empty()) {
        throw DatasetError("{}: no pools listed", table.source());
    }
    return pools;
}

void read_pool_regions_csv(const std::filesystem::path& path, std::vector<PoolReport>& pools)
{
    const auto table = read_csv(path);

    const auto id       = table.column("pool_id");
    const auto region   = table.column("region_id");
    const auto hashrate = table.column("hashrate");

    for (const auto& r : table.rows()) {
        const auto& poolId = table.field(r, id);
        auto pool = std::find_if(pools.begin(), pools.end(), [&](const auto& p) { return p.pool_id == poolId; });
        if (pool == pools.end()) {
            throw DatasetError("{}:{}: unknown pool '{}'", table.source(), r.line, poolId);
        }
        const auto& regionId = table.field(r, region);
        if (!pool->regional_hashrate.emplace(regionId, table.number(r, hashrate)).second) {
            throw DatasetError("{}:{}: pool '{}' lists region '{}' twice", table.source(), r.line, poolId, regionId);
        }
    }
}

std::vector<RegionEmissionFactor> read_ef_world_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto id      = table.column("region_id");
    const auto ef      = table.column("ef_kg_per_kwh");
    const auto vintage = table.column("vintage_year");

    std::vector<RegionEmissionFactor> efs;
    for (const auto& r : table.rows()) {
        RegionEmissionFactor factor;
        factor.region_id    = table.field(r, id);
        factor.kind         = RegionKind::WorldRegion;
        factor.ef           = table.number(r, ef);
        factor.vintage_year = static_cast<int>(table.integer(r, vintage));
        factor.validate();
        efs.push_back(std::move(factor));
    }
    return efs;
}

std::vector<ChinaGridRecord> read_ef_china_grids_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto id        = table.column("grid_id");
    const auto om        = table.column("om_factor");
    const auto coal      = table.column("coal_share");
    const auto provinces = table.column("provinces");

    std::vector<ChinaGridRecord> grids;
    for (const auto& r : table.rows()) {
        ChinaGridRecord grid;
        grid.grid_id    = table.field(r, id);
        grid.om_factor  = table.number(r, om);
        grid.coal_share = table.number(r, coal);

        std::string_view list = table.field(r, provinces);
        while (!list.empty()) {
            const auto end = list.find(';');
            auto name      = list.substr(0, end);
            list.remove_prefix(end == std::string_view::npos ? list.size() : end + 1);
            while (!name.empty() && name.front() == ' ') {
                name.remove_prefix(1);
            }
            while (!name.empty() && name.back() == ' ') {
                name.remove_suffix(1);
            }
            if (!name.empty()) {
                grid.member_provinces.emplace_back(name);
            }
        }
        grid.validate();
        grids.push_back(std::move(grid));
    }
    return grids;
}

std::map<std::string, double> read_generation_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto province   = table.column("province");
    const auto generation = table.column("generation_twh");

    std::map<std::string, double> result;
    for (const auto& r : table.rows()) {
        const double amount = table.number(r, generation);
        if (!(amount >= 0.0)) {
            throw DatasetError("{}:{}: generation must not be negative", table.source(), r.line);
        }
        if (!result.emplace(table.field(r, province), amount).second) {
            throw DatasetError("{}:{}: province '{}' listed twice", table.source(), r.line, table.field(r, province));
        }
    }
    return result;
}

ScenarioTrajectory read_trajectory_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto offset    = table.column("year_offset");
    const auto intensity = table.column("normalized_intensity");

    std::vector<TrajectoryPoint> points;
    for (const auto& r : table.rows()) {
        points.push_back({static_cast<int>(table.integer(r, offset)), table.number(r, intensity)});
    }
    try {
        return ScenarioTrajectory::table(std::move(points));
    } catch (const DatasetError& e) {
        throw DatasetError("{}: {}", table.source(), e.what());
    }
}

HashRateDistribution read_distribution_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto region = table.column("region");
    const auto share  = table.column("share");

    HashRateDistribution dist;
    for (const auto& r : table.rows()) {
        dist.shares[table.field(r, region)] = table.number(r, share);
    }
    return dist;
}

ProjectionSeries read_projection_csv(const std::filesystem::path& path)
{
    const auto table = read_csv(path);

    const auto year       = table.column("year");
    const auto reward     = table.column("reward_revenue_usd");
    const auto fee        = table.column("fee_revenue_usd");
    const auto ele        = table.column("electricity_twh");
    const auto ef         = table.column("ef_kg_kwh");
    const auto emissions  = table.column("emissions_mt");
    const auto cumulative = table.column("cumulative_mt");

    ProjectionSeries series;
    for (const auto& r : table.rows()) {
        YearRecord record;
        record.year                 = static_cast<int>(table.integer(r, year));
        record.block_reward_revenue = table.number(r, reward);
        record.fee_revenue          = table.number(r, fee);
        record.electricity          = table.number(r, ele);
        record.ef                   = table.number(r, ef);
        record.emissions            = table.number(r, emissions);
        record.cumulative           = table.number(r, cumulative);
        series.records.push_back(record);
    }
    if (!series.records.empty()) {
        series.cumulative_emissions = series.records.back().cumulative;
    }
    return series;
}

std::string projection_csv(const ProjectionSeries& series)
{
    CsvWriter csv({"year", "reward_revenue_usd", "fee_revenue_usd", "electricity_twh", "ef_kg_kwh", "emissions_mt", "cumulative_mt"});
    for (const auto& r : series.records) {
        csv.add_row({std::to_string(r.year),
                     format_number(r.block_reward_revenue),
                     format_number(r.fee_revenue),
                     format_number(r.electricity),
                     format_number(r.ef),
                     format_number(r.emissions),
                     format_number(r.cumulative)});
    }
    return csv.str();
}

std::string distribution_csv(const HashRateDistribution& dist)
{
    CsvWriter csv({"region", "share"});
    for (const auto& [region, share] : dist.shares) {
        csv.add_row({region, format_number(share)});
    }
    return csv.str();
}

std::string hardware_alpha_csv(const std::vector<HardwareSpec>& specs)
{
    CsvWriter csv({"name", "release_year", "electricity_cost_usd_per_ths_yr", "capital_cost_usd_per_ths_yr", "alpha"});
    for (const auto& spec : specs) {
        csv.add_row({spec.name,
                     std::to_string(spec.release_year),
                     format_number(annualized_electricity_cost(spec)),
                     format_number(annualized_capital_cost(spec)),
                     format_number(electricity_share(spec))});
    }
    return csv.str();
}

EmissionFactorResult build_emission_factor(const EmissionFactorInputs& inputs)
{
    auto efs = china_province_efs(inputs.grids);
    efs.insert(efs.end(), inputs.world.begin(), inputs.world.end());

    const RegionCatalog catalog(efs);
    const auto imputed = impute_regional_hashrates(inputs.pools, catalog);
    const auto weights = pool_weights(imputed);

    EmissionFactorResult result;
    result.distribution = network_distribution(imputed, weights);
    result.ef0          = weighted_ef0(result.distribution, efs);
    result.china_share  = aggregate_share(result.distribution, catalog, RegionKind::ChineseProvince);
    if (!inputs.province_generation.empty()) {
        for (const auto& [province, amount] : inputs.province_generation) {
            if (catalog.kind_of(province) != RegionKind::ChineseProvince) {
                throw DatasetError("generation table lists '{}', which is not a province of any grid", province);
            }
        }
        result.china_generation_weighted_ef = generation_weighted_mean(efs, inputs.province_generation);
    }
    return result;
}

}
