#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minecast {

enum class RegionKind
{
    ChineseProvince,
    WorldRegion,
};

std::string_view to_string(RegionKind kind);

/// Hash-rate report of one mining pool. regional_hashrate may be partial: it
/// can cover Chinese provinces, rest-of-world regions, both, or neither.
struct PoolReport
{
    std::string pool_id;
    double blocks_mined   = 0.0;
    double china_hashrate = 0.0;
    double row_hashrate   = 0.0;
    std::map<std::string, double> regional_hashrate;
};

struct RegionEmissionFactor
{
    std::string region_id;
    RegionKind kind   = RegionKind::WorldRegion;
    double ef         = 0.0; // kg CO2/kWh at vintage_year
    int vintage_year  = 2017;

    void validate() const;
};

/// One regional grid of the Chinese power system.
struct ChinaGridRecord
{
    std::string grid_id;
    double om_factor  = 0.0; // operating-margin emission factor, kg/kWh
    double coal_share = 0.0; // share of coal-fired generation
    std::vector<std::string> member_provinces;

    void validate() const;
};

/// Share of network hash rate per region. Shares sum to one.
struct HashRateDistribution
{
    std::map<std::string, double> shares;

    double total() const;
};

/// Known region labels and their kind. Region ids that are not in the
/// catalog are rejected rather than bucketed.
class RegionCatalog
{
public:
    RegionCatalog() = default;
    explicit RegionCatalog(std::span<const RegionEmissionFactor> efs);

    void add(const std::string& regionId, RegionKind kind);
    std::optional<RegionKind> kind_of(const std::string& regionId) const;
    bool contains(const std::string& regionId) const;

private:
    std::map<std::string, RegionKind> _regions;
};

inline constexpr double bau_annual_reduction = 0.007;
inline constexpr int ef_reference_year       = 2020;
inline constexpr int china_grid_vintage      = 2017;

/// Checks the per-pool invariants and that every region id is known.
void validate_pools(std::span<const PoolReport> reports, const RegionCatalog& catalog);

/// w_i = blocks_i / sum of blocks.
std::map<std::string, double> pool_weights(std::span<const PoolReport> reports);

/// Fills in missing provincial or rest-of-world breakdowns from the pooled
/// profile of the pools that reported one. Reported breakdowns are kept as is.
std::vector<PoolReport> impute_regional_hashrates(std::span<const PoolReport> reports, const RegionCatalog& catalog);

/// s_j = sum_i w_i * HR_ij / sum_j HR_ij over fully disaggregated reports.
HashRateDistribution network_distribution(std::span<const PoolReport> reports, const std::map<std::string, double>& weights);

/// Combined share of all regions of the given kind.
double aggregate_share(const HashRateDistribution& dist, const RegionCatalog& catalog, RegionKind kind);

/// Provincial factor = grid OM factor * grid coal share, for every member province.
std::vector<RegionEmissionFactor> china_province_ef(const ChinaGridRecord& grid);

/// china_province_ef() over all grids; a province may only belong to one grid.
std::vector<RegionEmissionFactor> china_province_efs(std::span<const ChinaGridRecord> grids);

/// Mean factor weighted by annual generation. Every weighted region needs a factor.
double generation_weighted_mean(std::span<const RegionEmissionFactor> efs, const std::map<std::string, double>& generation);

/// EF(0): hash-rate weighted mean of the regional factors, each scaled from its
/// vintage to toYear at (1 - scaleRate) per year.
double weighted_ef0(const HashRateDistribution& dist,
                    std::span<const RegionEmissionFactor> efs,
                    double scaleRate = bau_annual_reduction,
                    int toYear       = ef_reference_year);

}
