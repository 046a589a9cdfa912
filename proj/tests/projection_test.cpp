#include "minecast/carbon_model.hpp"
#include "minecast/datasets.hpp"
#include "minecast/error.hpp"
#include "minecast/projection.hpp"

#include <doctest.h>

#include <filesystem>

namespace minecast::test {

using namespace doctest;

namespace {

const std::filesystem::path dataDir = MINECAST_TEST_DATA_DIR;

ScenarioConfig base_case()
{
    ScenarioConfig s;
    s.market.v0 = calibrate_v0(49.0, s.cost.alpha, s.cost.p_ele, s.market.beta, s.issuance);
    s.ef0       = 0.46;
    return s;
}

}

TEST_CASE("Trajectories")
{
    SUBCASE("Exponential")
    {
        const auto bau = ScenarioTrajectory::exponential(bau_annual_reduction);
        CHECK(bau.intensity(0) == 1.0);
        CHECK(bau.intensity(10) == Approx(std::pow(0.993, 10)).epsilon(1e-15));
        CHECK_FALSE(bau.neutral_year().has_value());
        CHECK_THROWS_AS(ScenarioTrajectory::exponential(1.0), ConfigError);
    }

    SUBCASE("Linear")
    {
        const auto lin = ScenarioTrajectory::linear(0.03);
        CHECK(lin.intensity(0) == 1.0);
        CHECK(lin.intensity(10) == Approx(0.7).epsilon(1e-15));
        CHECK(lin.intensity(34) == 0.0);
        CHECK(lin.intensity(80) == 0.0);
        CHECK(lin.neutral_year() == 34);
        CHECK(neutral_year_for_theta(0.05) == 20);
        CHECK(neutral_year_for_theta(0.04) == 25);
        CHECK_FALSE(neutral_year_for_theta(0.0).has_value());
        CHECK_THROWS_AS(ScenarioTrajectory::linear(-0.01), ConfigError);
        CHECK_THROWS_AS(ScenarioTrajectory::linear(1.5), ConfigError);

        for (int t = 0; t < 60; ++t) {
            CHECK(lin.intensity(t + 1) <= lin.intensity(t));
        }
    }

    SUBCASE("Table")
    {
        const auto table = ScenarioTrajectory::table({{10, 0.5}, {0, 1.0}, {20, 0.0}});
        CHECK(table.intensity(0) == 1.0);
        CHECK(table.intensity(5) == Approx(0.75).epsilon(1e-15));
        CHECK(table.intensity(15) == Approx(0.25).epsilon(1e-15));
        CHECK(table.intensity(40) == 0.0);
        CHECK(table.neutral_year() == 20);

        CHECK_THROWS_AS(ScenarioTrajectory::table({}), DatasetError);
        CHECK_THROWS_AS(ScenarioTrajectory::table({{0, 0.9}, {5, 0.5}}), DatasetError);
        CHECK_THROWS_AS(ScenarioTrajectory::table({{0, 1.0}, {5, 0.5}, {10, 0.6}}), DatasetError);
        CHECK_THROWS_AS(ScenarioTrajectory::table({{0, 1.0}, {5, 0.5}, {5, 0.4}}), DatasetError);
        CHECK_THROWS_AS(ScenarioTrajectory::table({{0, 1.0}, {5, -0.1}}), DatasetError);
    }
}

TEST_CASE("Fitting a linear rate")
{
    std::vector<TrajectoryPoint> exact;
    for (int t = 0; t <= 33; ++t) {
        exact.push_back({t, 1.0 - 0.03 * t});
    }
    const auto fit = fit_linear_theta(ScenarioTrajectory::table(exact));
    CHECK(fit.theta == Approx(0.03).epsilon(1e-12));
    CHECK(fit.neutral_year == 34);

    const auto flat = fit_linear_theta(ScenarioTrajectory::table({{0, 1.0}, {10, 1.0}, {20, 1.0}}));
    CHECK(flat.theta == 0.0);
    CHECK_FALSE(flat.neutral_year.has_value());

    CHECK_THROWS_AS(fit_linear_theta(ScenarioTrajectory::table({{0, 1.0}, {10, 0.5}})), DatasetError);
    CHECK_THROWS_AS(fit_linear_theta(ScenarioTrajectory::table({{0, 1.0}, {10, 0.0}, {20, 0.0}})), DatasetError);
    CHECK_THROWS_AS(fit_linear_theta(ScenarioTrajectory::linear(0.03)), ConfigError);

    SUBCASE("Bundled tables")
    {
        const auto s550 = fit_linear_theta(read_trajectory_csv(dataDir / "trajectory_s550.csv"));
        CHECK(s550.theta == Approx(0.03).epsilon(0.005 / 0.03));
        CHECK(s550.theta == Approx(0.0300535).epsilon(1e-5));
        const auto s450 = fit_linear_theta(read_trajectory_csv(dataDir / "trajectory_s450.csv"));
        CHECK(s450.theta == Approx(0.0406545).epsilon(1e-5));
        CHECK(s450.theta > s550.theta);
    }
}

TEST_CASE("Projection")
{
    auto s = base_case();

    SUBCASE("Records")
    {
        const auto series = project(s);
        REQUIRE(series.records.size() == 81);
        CHECK(series.records.front().year == 2020);
        CHECK(series.records.back().year == 2100);

        // independent re-summation from t = 1
        double sum = 0.0;
        for (const auto& r : series.records) {
            CHECK(r.emissions == r.electricity * r.ef);
            CHECK(r.ef == s.ef0 * s.trajectory.intensity(r.year - 2020));
            if (r.year > 2020) {
                sum += r.emissions;
            }
            CHECK(r.cumulative == Approx(sum).epsilon(1e-13));
        }
        CHECK(series.cumulative_emissions == Approx(sum).epsilon(1e-13));
        CHECK(series.records.front().cumulative == 0.0);
    }

    SUBCASE("Base year anchor")
    {
        const auto series = project(s);
        CHECK(series.records.front().electricity == Approx(49.0).epsilon(1e-13));
        CHECK(series.records.front().emissions == Approx(49.0 * 0.46).epsilon(1e-13));
        CHECK(series.records.front().emissions >= 21.5);
        CHECK(series.records.front().emissions <= 26.5);
        CHECK(series.records.front().emissions == Approx(24.0).epsilon(0.1));
    }

    SUBCASE("Business as usual through 2100")
    {
        const auto series = project(s);
        CHECK(series.cumulative_through(2100) == Approx(2000.0).epsilon(0.15));
        CHECK(series.at_year(2100).electricity == Approx(400.0).epsilon(0.15));
    }

    SUBCASE("Horizon 2140")
    {
        s.horizon         = 120;
        const auto series = project(s);
        CHECK(series.at_year(2140).electricity == Approx(4000.0).epsilon(0.2));
        CHECK_THROWS_AS(series.at_year(2141), ConfigError);
    }

    SUBCASE("Zero emission factor decouples emissions")
    {
        const auto reference = project(s);
        s.ef0                = 0.0;
        const auto series    = project(s);
        for (std::size_t i = 0; i < series.records.size(); ++i) {
            CHECK(series.records[i].emissions == 0.0);
            CHECK(series.records[i].electricity == reference.records[i].electricity);
        }
        CHECK(series.cumulative_emissions == 0.0);
    }

    SUBCASE("Linear scenario reaches zero")
    {
        s.trajectory      = ScenarioTrajectory::linear(0.03);
        const auto series = project(s);
        for (const auto& r : series.records) {
            if (r.year - 2020 >= 34) {
                CHECK(r.emissions == 0.0);
            }
        }
        CHECK(series.peak_year() - 2020 <= 15);
        CHECK(series.cumulative_emissions < 200.0);
    }

    SUBCASE("Bundled scenario tables stay below 200 Mt")
    {
        for (const char* file : {"trajectory_s450.csv", "trajectory_s550.csv"}) {
            s.trajectory      = read_trajectory_csv(dataDir / file);
            const auto series = project(s);
            CHECK_MESSAGE(series.cumulative_emissions < 200.0, file);
            const int neutral = *s.trajectory.neutral_year();
            for (const auto& r : series.records) {
                if (r.year - 2020 >= neutral) {
                    CHECK(r.emissions == 0.0);
                }
            }
        }
    }

    SUBCASE("Validation")
    {
        s.horizon = 0;
        CHECK_THROWS_AS(project(s), ConfigError);
        s         = base_case();
        s.ef0     = 3.0;
        CHECK_THROWS_AS(project(s), ConfigError);
        s           = base_case();
        s.market.v0 = 0.0;
        CHECK_THROWS_AS(project(s), ConfigError);
    }
}

TEST_CASE("Block reward only series")
{
    auto s            = base_case();
    s.horizon         = 130;
    const auto full   = project(s);
    const auto reward = block_reward_only_series(s);

    CHECK(reward.at_year(2055).electricity < 1.0);

    // the last rewarded block, height 6,929,999, falls inside 2140
    CHECK(reward.at_year(2140).electricity > 0.0);
    CHECK(reward.at_year(2140).electricity < 1e-4);
    for (int year = 2141; year <= 2150; ++year) {
        CHECK(reward.at_year(year).electricity == 0.0);
    }
    for (std::size_t i = 0; i < full.records.size(); ++i) {
        CHECK(reward.records[i].electricity <= full.records[i].electricity);
        CHECK(reward.records[i].fee_revenue == 0.0);
        CHECK(reward.records[i].block_reward_revenue == full.records[i].block_reward_revenue);
    }
}

TEST_CASE("Cumulative emissions are monotone in the drivers")
{
    auto s       = base_case();
    s.trajectory = ScenarioTrajectory::linear(0.03);

    auto cumulative = [](const ScenarioConfig& c) { return project(c).cumulative_emissions; };

    double prev = 0.0;
    for (double alpha : {0.3, 0.45, 0.6, 0.75, 0.9, 1.0}) {
        auto c       = s;
        c.cost.alpha = alpha;
        CHECK(cumulative(c) > prev);
        prev = cumulative(c);
    }
    prev = 0.0;
    for (double gamma : {0.0, 0.02, 0.06, 0.1, 0.2}) {
        auto c         = s;
        c.market.gamma = gamma;
        CHECK(cumulative(c) > prev);
        prev = cumulative(c);
    }
    prev = -1.0;
    for (double ef0 : {0.0, 0.2, 0.46, 0.8}) {
        auto c = s;
        c.ef0  = ef0;
        CHECK(cumulative(c) > prev);
        prev = cumulative(c);
    }
    prev = 1e12;
    for (double theta : {0.01, 0.02, 0.03, 0.04, 0.05}) {
        auto c       = s;
        c.trajectory = ScenarioTrajectory::linear(theta);
        CHECK(cumulative(c) < prev);
        prev = cumulative(c);
    }
}

}
