#include "minecast/market_model.hpp"

#include "minecast/energy_model.hpp"
#include "minecast/error.hpp"

#include <cmath>

namespace minecast {

void MarketParams::validate() const
{
    if (!(v0 > 0.0) || !std::isfinite(v0)) {
        throw ConfigError("market.v0 must be a positive market capitalization (got {})", v0);
    }
    if (!(gamma >= -0.5 && gamma <= 0.5)) {
        throw ConfigError("market.gamma must lie in [-0.5, 0.5] (got {})", gamma);
    }
    if (!(beta >= 0.0 && beta <= 0.1)) {
        throw ConfigError("market.beta must lie in [0, 0.1] (got {})", beta);
    }
}

void GoldOtcParams::validate() const
{
    if (!(rho > 0.0)) {
        throw ConfigError("gold.rho must be positive (got {})", rho);
    }
    if (!(theta_share >= 0.0 && theta_share <= 1.0)) {
        throw ConfigError("gold.theta_share must lie in [0, 1] (got {})", theta_share);
    }
    if (!(phi >= 0.0 && phi <= 0.01)) {
        throw ConfigError("gold.phi must lie in [0, 0.01] (got {})", phi);
    }
}

double beta_from_gold(const GoldOtcParams& gold)
{
    return gold.rho * gold.theta_share * gold.phi;
}

double market_cap(const MarketParams& params, double t)
{
    return params.v0 * std::pow(1.0 + params.gamma, t);
}

RevenueBreakdown revenue(const MarketParams& params, const SupplyYear& supply, int t)
{
    if (!(supply.cumulative > 0.0)) {
        throw NumericError("cumulative supply Q({}) is zero; the issuance configuration is malformed", t);
    }

    const double cap = market_cap(params, t);

    RevenueBreakdown result;
    result.block_reward_revenue = cap / supply.cumulative * supply.minted;
    result.fee_revenue          = cap * params.beta;
    result.total                = result.block_reward_revenue + result.fee_revenue;
    return result;
}

RevenueBreakdown revenue(const MarketParams& params, const IssuanceParams& issuance, int t)
{
    const SupplyYear supply{coins_minted_in_year(issuance, t), cumulative_supply(issuance, t)};
    return revenue(params, supply, t);
}

double calibrate_v0(double targetElectricityTwh, double alpha, double pEle, double beta, const IssuanceParams& issuance)
{
    if (!(targetElectricityTwh > 0.0)) {
        throw ConfigError("calibration target must be a positive electricity consumption in TWh (got {})", targetElectricityTwh);
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigError("energy.alpha must lie in (0, 1] (got {})", alpha);
    }
    if (!(pEle > 0.0)) {
        throw ConfigError("energy.p_ele must be positive (got {})", pEle);
    }

    const double q0    = coins_minted_in_year(issuance, 0);
    const double Q0    = cumulative_supply(issuance, 0);
    const double yield = q0 / Q0 + beta;
    if (!(yield > 0.0)) {
        throw NumericError("cannot calibrate V(0): q(0)/Q(0) + beta is zero");
    }

    const double revenue0 = targetElectricityTwh * kwh_per_twh * pEle / alpha;
    return revenue0 / yield;
}

}
