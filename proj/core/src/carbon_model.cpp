#include "minecast/carbon_model.hpp"

#include "minecast/error.hpp"

#include <cmath>
#include <set>

namespace minecast {

std::string_view to_string(RegionKind kind)
{
    switch (kind) {
    case RegionKind::ChineseProvince:
        return "chinese_province";
    case RegionKind::WorldRegion:
        return "world_region";
    }
    return "unknown";
}

void RegionEmissionFactor::validate() const
{
    if (!(ef >= 0.0 && ef <= 2.0)) {
        throw DatasetError("emission factor for region '{}' must lie in [0, 2] kg/kWh (got {})", region_id, ef);
    }
    if (vintage_year < 2000 || vintage_year > 2030) {
        throw DatasetError("vintage year for region '{}' must lie in [2000, 2030] (got {})", region_id, vintage_year);
    }
}

void ChinaGridRecord::validate() const
{
    if (!(om_factor > 0.0)) {
        throw DatasetError("grid '{}': om_factor must be positive (got {})", grid_id, om_factor);
    }
    if (!(coal_share >= 0.0 && coal_share <= 1.0)) {
        throw DatasetError("grid '{}': coal_share must lie in [0, 1] (got {})", grid_id, coal_share);
    }
    if (member_provinces.empty()) {
        throw DatasetError("grid '{}' lists no provinces", grid_id);
    }
}

double HashRateDistribution::total() const
{
    double sum = 0.0;
    for (const auto& [region, share] : shares) {
        sum += share;
    }
    return sum;
}

RegionCatalog::RegionCatalog(std::span<const RegionEmissionFactor> efs)
{
    for (const auto& ef : efs) {
        add(ef.region_id, ef.kind);
    }
}

void RegionCatalog::add(const std::string& regionId, RegionKind kind)
{
    auto [it, inserted] = _regions.emplace(regionId, kind);
    if (!inserted && it->second != kind) {
        throw DatasetError("region '{}' is listed both as {} and {}", regionId, to_string(it->second), to_string(kind));
    }
}

std::optional<RegionKind> RegionCatalog::kind_of(const std::string& regionId) const
{
    if (auto it = _regions.find(regionId); it != _regions.end()) {
        return it->second;
    }
    return std::nullopt;
}

bool RegionCatalog::contains(const std::string& regionId) const
{
    return _regions.count(regionId) > 0;
}

namespace {

struct SideSums
{
    double china = 0.0;
    double row   = 0.0;
    bool hasChina = false;
    bool hasRow   = false;
};

SideSums side_sums(const PoolReport& report, const RegionCatalog& catalog)
{
    SideSums sums;
    for (const auto& [region, hashrate] : report.regional_hashrate) {
        const auto kind = catalog.kind_of(region);
        if (!kind) {
            throw DatasetError("pool '{}' reports region '{}', which has no emission factor", report.pool_id, region);
        }
        if (*kind == RegionKind::ChineseProvince) {
            sums.china += hashrate;
            sums.hasChina = true;
        } else {
            sums.row += hashrate;
            sums.hasRow = true;
        }
    }
    return sums;
}

}

void validate_pools(std::span<const PoolReport> reports, const RegionCatalog& catalog)
{
    std::set<std::string> seen;
    for (const auto& report : reports) {
        if (!seen.insert(report.pool_id).second) {
            throw DatasetError("pool '{}' appears more than once", report.pool_id);
        }
        if (!(report.blocks_mined >= 0.0)) {
            throw DatasetError("pool '{}': blocks_mined must not be negative", report.pool_id);
        }
        if (!(report.china_hashrate >= 0.0) || !(report.row_hashrate >= 0.0) ||
            !(report.china_hashrate + report.row_hashrate > 0.0)) {
            throw DatasetError("pool '{}': china_hashrate and row_hashrate must be non-negative with a positive sum", report.pool_id);
        }
        for (const auto& [region, hashrate] : report.regional_hashrate) {
            if (!(hashrate >= 0.0)) {
                throw DatasetError("pool '{}': hash rate for region '{}' must not be negative", report.pool_id, region);
            }
        }

        const auto sums = side_sums(report, catalog);
        if (sums.china > report.china_hashrate * (1.0 + 1e-6)) {
            throw DatasetError("pool '{}': provincial hash rates sum to {} which exceeds china_hashrate {}",
                               report.pool_id, sums.china, report.china_hashrate);
        }
        if (sums.row > report.row_hashrate * (1.0 + 1e-6)) {
            throw DatasetError("pool '{}': rest-of-world regional hash rates sum to {} which exceeds row_hashrate {}",
                               report.pool_id, sums.row, report.row_hashrate);
        }
    }
}

std::map<std::string, double> pool_weights(std::span<const PoolReport> reports)
{
    if (reports.empty()) {
        throw DatasetError("no mining pools given");
    }

    double total = 0.0;
    for (const auto& report : reports) {
        if (!(report.blocks_mined >= 0.0)) {
            throw DatasetError("pool '{}': blocks_mined must not be negative", report.pool_id);
        }
        total += report.blocks_mined;
    }
    if (!(total > 0.0)) {
        throw DatasetError("mining pools report zero blocks in total");
    }

    std::map<std::string, double> weights;
    for (const auto& report : reports) {
        weights[report.pool_id] += report.blocks_mined / total;
    }
    return weights;
}

std::vector<PoolReport> impute_regional_hashrates(std::span<const PoolReport> reports, const RegionCatalog& catalog)
{
    validate_pools(reports, catalog);

    // pooled donor profiles, one per side
    std::map<std::string, double> chinaProfile;
    std::map<std::string, double> rowProfile;
    double chinaDonorTotal = 0.0;
    double rowDonorTotal   = 0.0;

    std::vector<SideSums> sums;
    sums.reserve(reports.size());
    for (const auto& report : reports) {
        sums.push_back(side_sums(report, catalog));
        for (const auto& [region, hashrate] : report.regional_hashrate) {
            if (catalog.kind_of(region) == RegionKind::ChineseProvince) {
                if (sums.back().china > 0.0) {
                    chinaProfile[region] += hashrate;
                    chinaDonorTotal += hashrate;
                }
            } else if (sums.back().row > 0.0) {
                rowProfile[region] += hashrate;
                rowDonorTotal += hashrate;
            }
        }
    }

    std::vector<PoolReport> result(reports.begin(), reports.end());
    for (std::size_t i = 0; i < result.size(); ++i) {
        auto& report = result[i];

        if (!(sums[i].china > 0.0) && report.china_hashrate > 0.0) {
            if (!(chinaDonorTotal > 0.0)) {
                throw DatasetError("no pool reports a Chinese provincial breakdown; cannot impute provinces for pool '{}'", report.pool_id);
            }
            for (const auto& [region, hashrate] : chinaProfile) {
                report.regional_hashrate[region] = report.china_hashrate * hashrate / chinaDonorTotal;
            }
        }

        if (!(sums[i].row > 0.0) && report.row_hashrate > 0.0) {
            if (!(rowDonorTotal > 0.0)) {
                throw DatasetError("no pool reports a rest-of-world regional breakdown; cannot impute regions for pool '{}'", report.pool_id);
            }
            for (const auto& [region, hashrate] : rowProfile) {
                report.regional_hashrate[region] = report.row_hashrate * hashrate / rowDonorTotal;
            }
        }
    }
    return result;
}

HashRateDistribution network_distribution(std::span<const PoolReport> reports, const std::map<std::string, double>& weights)
{
    HashRateDistribution dist;
    for (const auto& report : reports) {
        auto weight = weights.find(report.pool_id);
        if (weight == weights.end()) {
            throw DatasetError("no weight for pool '{}'", report.pool_id);
        }

        double poolTotal = 0.0;
        for (const auto& [region, hashrate] : report.regional_hashrate) {
            poolTotal += hashrate;
        }
        if (!(poolTotal > 0.0)) {
            throw DatasetError("pool '{}' has no regional hash rate after imputation", report.pool_id);
        }

        for (const auto& [region, hashrate] : report.regional_hashrate) {
            dist.shares[region] += weight->second * hashrate / poolTotal;
        }
    }
    return dist;
}

double aggregate_share(const HashRateDistribution& dist, const RegionCatalog& catalog, RegionKind kind)
{
    double share = 0.0;
    for (const auto& [region, value] : dist.shares) {
        if (catalog.kind_of(region) == kind) {
            share += value;
        }
    }
    return share;
}

std::vector<RegionEmissionFactor> china_province_ef(const ChinaGridRecord& grid)
{
    grid.validate();

    std::vector<RegionEmissionFactor> efs;
    efs.reserve(grid.member_provinces.size());
    for (const auto& province : grid.member_provinces) {
        efs.push_back({province, RegionKind::ChineseProvince, grid.om_factor * grid.coal_share, china_grid_vintage});
    }
    return efs;
}

std::vector<RegionEmissionFactor> china_province_efs(std::span<const ChinaGridRecord> grids)
{
    std::map<std::string, std::string> owner;
    std::vector<RegionEmissionFactor> efs;
    for (const auto& grid : grids) {
        for (auto& ef : china_province_ef(grid)) {
            auto [it, inserted] = owner.emplace(ef.region_id, grid.grid_id);
            if (!inserted) {
                throw DatasetError("province '{}' belongs to both grid '{}' and grid '{}'", ef.region_id, it->second, grid.grid_id);
            }
            efs.push_back(std::move(ef));
        }
    }
    return efs;
}

static std::map<std::string, const RegionEmissionFactor*> index_efs(std::span<const RegionEmissionFactor> efs)
{
    std::map<std::string, const RegionEmissionFactor*> index;
    for (const auto& ef : efs) {
        ef.validate();
        if (!index.emplace(ef.region_id, &ef).second) {
            throw DatasetError("duplicate emission factor for region '{}'", ef.region_id);
        }
    }
    return index;
}

double generation_weighted_mean(std::span<const RegionEmissionFactor> efs, const std::map<std::string, double>& generation)
{
    const auto index = index_efs(efs);

    double weighted = 0.0;
    double total    = 0.0;
    for (const auto& [region, amount] : generation) {
        auto it = index.find(region);
        if (it == index.end()) {
            throw DatasetError("no emission factor for region '{}'", region);
        }
        if (!(amount >= 0.0)) {
            throw DatasetError("generation for region '{}' must not be negative", region);
        }
        weighted += it->second->ef * amount;
        total += amount;
    }
    if (!(total > 0.0)) {
        throw DatasetError("total generation is zero");
    }
    return weighted / total;
}

double weighted_ef0(const HashRateDistribution& dist, std::span<const RegionEmissionFactor> efs, double scaleRate, int toYear)
{
    const auto index = index_efs(efs);

    double ef0 = 0.0;
    for (const auto& [region, share] : dist.shares) {
        if (!(share > 0.0)) {
            continue;
        }
        auto it = index.find(region);
        if (it == index.end()) {
            throw DatasetError("no emission factor for region '{}'", region);
        }
        const auto& ef     = *it->second;
        const double scale = std::pow(1.0 - scaleRate, toYear - ef.vintage_year);
        ef0 += ef.ef * scale * share;
    }
    return ef0;
}

}
