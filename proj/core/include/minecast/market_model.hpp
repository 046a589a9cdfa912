#pragma once

#include "minecast/supply_schedule.hpp"

namespace minecast {

struct MarketParams
{
    double v0    = 0.0;    // market capitalization at t=0, USD
    double gamma = 0.06;   // annual growth rate of the market capitalization
    double beta  = 0.0018; // on-chain fees per unit of market capitalization per year

    void validate() const;
};

/// Gold over-the-counter trading figures used to infer the fee ratio.
struct GoldOtcParams
{
    double rho         = 3.37;   // trading volume / market capitalization
    double theta_share = 0.58;   // OTC share of trading volume
    double phi         = 0.0009; // OTC transaction fee rate

    void validate() const;
};

/// Annual mining revenue. In equilibrium this is also the annual mining cost.
struct RevenueBreakdown
{
    double block_reward_revenue = 0.0; // USD/yr
    double fee_revenue          = 0.0; // USD/yr
    double total                = 0.0; // USD/yr
};

/// Fee ratio implied by gold OTC trading: rho * theta_share * phi.
double beta_from_gold(const GoldOtcParams& gold);

/// V(t) = v0 (1 + gamma)^t
double market_cap(const MarketParams& params, double t);

/// Block rewards valued at V(t)/Q(t) per coin, plus fees V(t) * beta.
RevenueBreakdown revenue(const MarketParams& params, const IssuanceParams& issuance, int t);

/// Same as revenue() with q(t) and Q(t) already known.
RevenueBreakdown revenue(const MarketParams& params, const SupplyYear& supply, int t);

/// V(0) that makes electricity consumption at t=0 equal the target.
/// Inverts ELE(0) = alpha R(0) / p_ele, which is linear in V(0).
double calibrate_v0(double targetElectricityTwh, double alpha, double pEle, double beta, const IssuanceParams& issuance);

}
