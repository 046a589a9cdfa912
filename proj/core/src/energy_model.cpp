#include "minecast/energy_model.hpp"

#include "minecast/error.hpp"

#include <cmath>

namespace minecast {

void CostShareParams::validate() const
{
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("energy.alpha must lie in (0, 1] (got {})", alpha);
    }
    if (!(p_ele > 0.0) || !std::isfinite(p_ele)) {
        throw ConfigError("energy.p_ele must be positive (got {})", p_ele);
    }
}

void HardwareSpec::validate() const
{
    auto require_positive = [this](double value, const char* field) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw DatasetError("hardware '{}': {} must be positive (got {})", name, field, value);
        }
    };

    require_positive(efficiency, "efficiency_j_per_th");
    require_positive(hashrate, "hashrate_ths");
    require_positive(release_price, "price_usd");
    require_positive(electricity_price, "electricity_price_usd_kwh");
    require_positive(lifespan, "lifespan_years");
    if (!(interest_rate >= 0.0)) {
        throw DatasetError("hardware '{}': interest_rate must not be negative (got {})", name, interest_rate);
    }
}

double electricity_consumption(const RevenueBreakdown& revenue, const CostShareParams& cost)
{
    const double kwh = cost.alpha * revenue.total / cost.p_ele;
    return kwh / kwh_per_twh;
}

double annualized_electricity_cost(const HardwareSpec& spec)
{
    // J/TH * TH/s = W per TH/s; / 1000 -> kW; * hours -> kWh per year
    return spec.efficiency * spec.electricity_price / 1000.0 * hours_per_year;
}

double annualized_capital_cost(const HardwareSpec& spec)
{
    return spec.release_price / (spec.hashrate * spec.lifespan) * (1.0 + spec.interest_rate);
}

double electricity_share(const HardwareSpec& spec)
{
    const double ele = annualized_electricity_cost(spec);
    const double cap = annualized_capital_cost(spec);
    return ele / (ele + cap);
}

double average_alpha(std::span<const HardwareSpec> specs, int fromYear)
{
    double sum = 0.0;
    int count  = 0;
    for (const auto& spec : specs) {
        if (spec.release_year < fromYear) {
            continue;
        }
        sum += electricity_share(spec);
        ++count;
    }

    if (count == 0) {
        throw DatasetError("no hardware released in or after {} (of {} specs)", fromYear, specs.size());
    }
    return sum / count;
}

}
