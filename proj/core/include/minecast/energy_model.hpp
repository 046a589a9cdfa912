#pragma once

#include "minecast/market_model.hpp"

#include <span>
#include <string>

namespace minecast {

inline constexpr double kwh_per_twh  = 1e9;
inline constexpr double hours_per_year = 24.0 * 365.0;

/// Electricity share of mining cost and the (constant) electricity price.
struct CostShareParams
{
    double alpha = 0.6;  // share of electricity in total mining cost
    double p_ele = 0.05; // USD/kWh

    void validate() const;
};

/// One generation of mining hardware. Amounts are per terahash/s of capacity.
struct HardwareSpec
{
    std::string name;
    int release_year           = 0;
    double efficiency          = 0.0; // J per terahash
    double hashrate            = 0.0; // terahash/s
    double release_price       = 0.0; // USD
    double electricity_price   = 0.0; // USD/kWh, deflated to the release year
    double interest_rate       = 0.0; // per year
    double lifespan            = 1.5; // years

    void validate() const;
};

inline constexpr double asic_lifespan_years    = 1.5;
inline constexpr double cpu_gpu_lifespan_years = 4.0;

/// ELE = alpha * R / p_ele, in TWh per year.
double electricity_consumption(const RevenueBreakdown& revenue, const CostShareParams& cost);

/// USD per (TH/s) per year spent on electricity.
double annualized_electricity_cost(const HardwareSpec& spec);

/// USD per (TH/s) per year of depreciation plus financing.
double annualized_capital_cost(const HardwareSpec& spec);

/// Electricity share of the annualized cost of one hardware generation.
double electricity_share(const HardwareSpec& spec);

/// Unweighted mean of electricity_share() over specs released in or after fromYear.
/// Throws DatasetError when no spec passes the filter.
double average_alpha(std::span<const HardwareSpec> specs, int fromYear);

}
