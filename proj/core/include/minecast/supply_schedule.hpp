#pragma once

#include <cstdint>
#include <vector>

namespace minecast {

using BlockHeight = std::int64_t;

/// Deterministic issuance schedule. Year offset 0 is calendar year 2020.
struct IssuanceParams
{
    double initial_reward      = 50.0;      // BTC per block in epoch 0
    BlockHeight halving_interval = 210'000; // blocks per epoch
    BlockHeight blocks_per_year  = 52'560;  // 144 blocks/day x 365
    BlockHeight height_at_t0     = 610'000; // height at Jan 1 2020
    double minted_at_t0        = 18'150'000.0; // Q(0), BTC

    /// Throws ConfigError when a field violates its invariant.
    void validate() const;
};

/// Hard cap on total issuance, BTC.
inline constexpr double max_supply_btc = 21'000'000.0;

/// Rewards below one satoshi are treated as zero.
inline constexpr double satoshi_btc = 1e-8;

/// Block reward at the given height: initial_reward / 2^epoch, zero below one satoshi.
double reward_at_height(const IssuanceParams& params, BlockHeight height);

/// q(t): coins minted by the blocks_per_year blocks mapped to year offset t.
/// Evaluated per epoch segment, so years straddling a halving are block exact.
double coins_minted_in_year(const IssuanceParams& params, int t);

/// Q(t) = minted_at_t0 + sum of q(u) for u = 1..t.
double cumulative_supply(const IssuanceParams& params, int t);

struct SupplyYear
{
    double minted     = 0.0; // q(t)
    double cumulative = 0.0; // Q(t)
};

/// q(t) and Q(t) for t = 0..lastYear, accumulated in one pass.
std::vector<SupplyYear> supply_table(const IssuanceParams& params, int lastYear);

}
