#pragma once

#include "minecast/carbon_model.hpp"
#include "minecast/energy_model.hpp"
#include "minecast/projection.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace minecast {

// Readers for the tabular inputs. All of them throw DatasetError with the file
// name and line on malformed content.

/// name,release_year,efficiency_j_per_th,hashrate_ths,price_usd,electricity_price_usd_kwh,interest_rate,lifespan_years
std::vector<HardwareSpec> read_hardware_csv(const std::filesystem::path& path);

/// pool_id,blocks_mined,china_hashrate,row_hashrate
std::vector<PoolReport> read_pools_csv(const std::filesystem::path& path);

/// pool_id,region_id,hashrate; rows are attached to the matching pool.
void read_pool_regions_csv(const std::filesystem::path& path, std::vector<PoolReport>& pools);

/// region_id,ef_kg_per_kwh,vintage_year
std::vector<RegionEmissionFactor> read_ef_world_csv(const std::filesystem::path& path);

/// grid_id,om_factor,coal_share,provinces (provinces separated by ';')
std::vector<ChinaGridRecord> read_ef_china_grids_csv(const std::filesystem::path& path);

/// province,generation_twh
std::map<std::string, double> read_generation_csv(const std::filesystem::path& path);

/// year_offset,normalized_intensity
ScenarioTrajectory read_trajectory_csv(const std::filesystem::path& path);

/// region,share
HashRateDistribution read_distribution_csv(const std::filesystem::path& path);

/// Reads back what projection_csv() writes.
ProjectionSeries read_projection_csv(const std::filesystem::path& path);

// Writers. Output is byte-for-byte deterministic.

std::string projection_csv(const ProjectionSeries& series);
std::string distribution_csv(const HashRateDistribution& dist);
std::string hardware_alpha_csv(const std::vector<HardwareSpec>& specs);

/// Everything needed to build EF(0) from pool geography.
struct EmissionFactorInputs
{
    std::vector<PoolReport> pools;
    std::vector<RegionEmissionFactor> world;
    std::vector<ChinaGridRecord> grids;
    std::map<std::string, double> province_generation; // may be empty
};

struct EmissionFactorResult
{
    HashRateDistribution distribution;
    double ef0         = 0.0;
    double china_share = 0.0;
    std::optional<double> china_generation_weighted_ef; // 2017 vintage
};

/// Imputation, pool weighting, network shares and EF(0) in one pass.
EmissionFactorResult build_emission_factor(const EmissionFactorInputs& inputs);

}
