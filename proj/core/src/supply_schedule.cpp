#include "minecast/supply_schedule.hpp"

#include "minecast/error.hpp"

#include <algorithm>
#include <cmath>

namespace minecast {

void IssuanceParams::validate() const
{
    if (!(initial_reward > 0.0)) {
        throw ConfigError("issuance.initial_reward must be positive (got {})", initial_reward);
    }
    if (halving_interval <= 0) {
        throw ConfigError("issuance.halving_interval must be positive (got {})", halving_interval);
    }
    if (blocks_per_year <= 0) {
        throw ConfigError("issuance.blocks_per_year must be positive (got {})", blocks_per_year);
    }
    if (height_at_t0 < 0) {
        throw ConfigError("issuance.height_at_t0 must not be negative (got {})", height_at_t0);
    }
    if (!(minted_at_t0 > 0.0) || !(minted_at_t0 < max_supply_btc)) {
        throw ConfigError("issuance.minted_at_t0 must lie in (0, 21e6) BTC (got {})", minted_at_t0);
    }
}

static double reward_for_epoch(const IssuanceParams& params, BlockHeight epoch)
{
    // 2^-1100 underflows to zero long before this matters
    if (epoch > 1000) {
        return 0.0;
    }
    const double reward = std::ldexp(params.initial_reward, -static_cast<int>(epoch));
    return reward < satoshi_btc ? 0.0 : reward;
}

double reward_at_height(const IssuanceParams& params, BlockHeight height)
{
    if (height < 0) {
        return 0.0;
    }
    return reward_for_epoch(params, height / params.halving_interval);
}

double coins_minted_in_year(const IssuanceParams& params, int t)
{
    if (t < 0) {
        return 0.0;
    }

    const BlockHeight begin = params.height_at_t0 + static_cast<BlockHeight>(t) * params.blocks_per_year;
    const BlockHeight end   = begin + params.blocks_per_year;

    double minted = 0.0;
    for (BlockHeight h = begin; h < end;) {
        const BlockHeight epoch    = h / params.halving_interval;
        const BlockHeight epochEnd = std::min(end, (epoch + 1) * params.halving_interval);
        const double reward        = reward_for_epoch(params, epoch);
        if (reward == 0.0) {
            break;
        }
        minted += reward * static_cast<double>(epochEnd - h);
        h = epochEnd;
    }
    return minted;
}

double cumulative_supply(const IssuanceParams& params, int t)
{
    double supply = params.minted_at_t0;
    for (int u = 1; u <= t; ++u) {
        supply += coins_minted_in_year(params, u);
    }
    return supply;
}

std::vector<SupplyYear> supply_table(const IssuanceParams& params, int lastYear)
{
    std::vector<SupplyYear> table;
    table.reserve(static_cast<std::size_t>(std::max(lastYear, 0)) + 1);

    double supply = params.minted_at_t0;
    for (int t = 0; t <= lastYear; ++t) {
        const double minted = coins_minted_in_year(params, t);
        if (t > 0) {
            supply += minted;
        }
        table.push_back({minted, supply});
    }
    return table;
}

}
