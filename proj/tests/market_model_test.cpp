#include "minecast/energy_model.hpp"
#include "minecast/error.hpp"
#include "minecast/market_model.hpp"

#include <doctest.h>

#include <cmath>

namespace minecast::test {

using namespace doctest;

TEST_CASE("Fee ratio from the gold analogy")
{
    CHECK(beta_from_gold({3.37, 0.58, 0.0009}) == Approx(0.00175914).epsilon(1e-12));
    CHECK(std::round(beta_from_gold({3.37, 0.58, 0.0009}) * 1e4) / 1e4 == 0.0018);
    CHECK(beta_from_gold({5.0, 0.0, 0.0009}) == 0.0);
    CHECK(beta_from_gold({1.0, 1.0, 0.005}) == 0.005);

    CHECK_THROWS_AS(GoldOtcParams({0.0, 0.5, 0.001}).validate(), ConfigError);
    CHECK_THROWS_AS(GoldOtcParams({1.0, 1.5, 0.001}).validate(), ConfigError);
    CHECK_THROWS_AS(GoldOtcParams({1.0, 0.5, 0.02}).validate(), ConfigError);
}

TEST_CASE("Market capitalization path")
{
    const MarketParams p{1e11, 0.06, 0.0018};
    CHECK(market_cap(p, 0) == 1e11);
    CHECK(market_cap(p, 12) == Approx(1e11 * 2.0122).epsilon(1e-4));

    for (int t = 0; t < 120; ++t) {
        CHECK(market_cap(p, t + 1) / market_cap(p, t) == Approx(1.06).epsilon(1e-14));
    }

    const MarketParams flat{1e11, 0.0, 0.0018};
    CHECK(market_cap(flat, 37) == 1e11);

    CHECK_THROWS_AS(MarketParams({0.0, 0.06, 0.0018}).validate(), ConfigError);
    CHECK_THROWS_AS(MarketParams({1e11, 0.9, 0.0018}).validate(), ConfigError);
    CHECK_THROWS_AS(MarketParams({1e11, 0.06, -0.1}).validate(), ConfigError);
}

TEST_CASE("Mining revenue")
{
    const IssuanceParams issuance;
    const MarketParams p{1.5e11, 0.06, 0.0018};

    SUBCASE("Components")
    {
        for (int t : {0, 1, 5, 40, 130}) {
            const auto r  = revenue(p, issuance, t);
            const double v = market_cap(p, t);
            CHECK(r.block_reward_revenue == Approx(v * coins_minted_in_year(issuance, t) / cumulative_supply(issuance, t)).epsilon(1e-14));
            CHECK(r.fee_revenue == Approx(v * 0.0018).epsilon(1e-14));
            CHECK(r.total == r.block_reward_revenue + r.fee_revenue);
            CHECK(r.block_reward_revenue >= 0.0);
        }
    }

    SUBCASE("Fee share in 2020")
    {
        const auto r = revenue(p, issuance, 0);
        CHECK(r.fee_revenue / r.total == Approx(0.068).epsilon(0.005 / 0.068));
    }

    SUBCASE("After the last halving only fees remain")
    {
        const auto r = revenue(p, issuance, 130);
        CHECK(r.block_reward_revenue == 0.0);
        CHECK(r.total == Approx(market_cap(p, 130) * 0.0018));
    }

    SUBCASE("No fees and no issuance")
    {
        const MarketParams noFees{1.5e11, 0.06, 0.0};
        CHECK(revenue(noFees, issuance, 150).total == 0.0);
    }

    SUBCASE("Empty supply is rejected")
    {
        CHECK_THROWS_AS(revenue(p, SupplyYear{0.0, 0.0}, 0), NumericError);
    }
}

TEST_CASE("Calibrating the market capitalization")
{
    const IssuanceParams issuance;
    const double q0 = coins_minted_in_year(issuance, 0);
    const double Q0 = cumulative_supply(issuance, 0);

    const double v0 = calibrate_v0(49.0, 0.6, 0.05, 0.0018, issuance);
    const double r0 = 49e9 * 0.05 / 0.6;
    CHECK(r0 == Approx(4.0833e9).epsilon(1e-4));
    CHECK(v0 == Approx(r0 / (q0 / Q0 + 0.0018)).epsilon(1e-14));
    CHECK(v0 > 1.5e11);
    CHECK(v0 < 2.5e11);

    const auto r = revenue(MarketParams{v0, 0.06, 0.0018}, issuance, 0);
    CHECK(electricity_consumption(r, {0.6, 0.05}) == Approx(49.0).epsilon(1e-14));

    CHECK(calibrate_v0(98.0, 0.6, 0.05, 0.0018, issuance) == Approx(2.0 * v0).epsilon(1e-14));
    CHECK_THROWS_AS(calibrate_v0(0.0, 0.6, 0.05, 0.0018, issuance), ConfigError);
    CHECK_THROWS_AS(calibrate_v0(49.0, 0.0, 0.05, 0.0018, issuance), ConfigError);
    CHECK_THROWS_AS(calibrate_v0(49.0, 0.6, 0.0, 0.0018, issuance), ConfigError);
}

}
