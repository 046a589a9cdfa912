#pragma once

#include "minecast/energy_model.hpp"
#include "minecast/market_model.hpp"
#include "minecast/supply_schedule.hpp"

#include <optional>
#include <span>
#include <vector>

namespace minecast {

/// Calendar year of year offset 0.
inline constexpr int base_year = 2020;

enum class TrajectoryKind
{
    Exponential,
    Linear,
    Table,
};

struct TrajectoryPoint
{
    int year_offset  = 0;
    double intensity = 1.0; // relative to year offset 0
};

/// Grid emission intensity relative to its value at t=0.
///
/// Exponential: (1 - rate)^t, never reaches zero.
/// Linear:      max(0, 1 - theta t), zero from T = ceil(1/theta) on.
/// Table:       piecewise linear through the points, flat after the last one.
class ScenarioTrajectory
{
public:
    static ScenarioTrajectory exponential(double rate);
    static ScenarioTrajectory linear(double theta);
    static ScenarioTrajectory table(std::vector<TrajectoryPoint> points);

    TrajectoryKind kind() const noexcept
    {
        return _kind;
    }

    /// Per-year rate: the exponential decay rate or theta.
    double rate() const noexcept
    {
        return _rate;
    }

    std::span<const TrajectoryPoint> points() const noexcept
    {
        return _points;
    }

    double intensity(int t) const;

    /// First year offset with zero intensity; empty if it never gets there.
    std::optional<int> neutral_year() const;

private:
    ScenarioTrajectory() = default;

    TrajectoryKind _kind = TrajectoryKind::Exponential;
    double _rate         = 0.0;
    std::vector<TrajectoryPoint> _points;
};

/// T = ceil(1/theta); empty when theta is zero.
std::optional<int> neutral_year_for_theta(double theta);

struct LinearFit
{
    double theta = 0.0;
    std::optional<int> neutral_year;
};

/// Least-squares decarbonization rate of a table trajectory, with the fitted
/// line pinned to intensity 1 at t=0. Points after the first zero are ignored.
LinearFit fit_linear_theta(const ScenarioTrajectory& table);

/// Everything needed to run one projection.
struct ScenarioConfig
{
    MarketParams market;
    IssuanceParams issuance;
    CostShareParams cost;
    double ef0 = 0.46; // kg CO2/kWh at t=0
    ScenarioTrajectory trajectory = ScenarioTrajectory::exponential(0.007);
    int horizon = 80; // last year offset, inclusive

    void validate() const;
};

struct YearRecord
{
    int year                    = base_year;
    double block_reward_revenue = 0.0; // USD
    double fee_revenue          = 0.0; // USD
    double electricity          = 0.0; // TWh
    double ef                   = 0.0; // kg/kWh
    double emissions            = 0.0; // Mt CO2
    double cumulative           = 0.0; // Mt CO2, running sum from t=1
};

struct ProjectionSeries
{
    std::vector<YearRecord> records; // one per year offset 0..horizon
    double cumulative_emissions = 0.0;

    const YearRecord& at_year(int calendarYear) const;

    /// Calendar year with the largest annual emissions (earliest on ties).
    int peak_year() const;

    /// Running cumulative emissions through the given calendar year, clamped to the horizon.
    double cumulative_through(int calendarYear) const;
};

/// Annual projection for t = 0..horizon. Emissions integrate as a left sum over
/// t = 1..horizon; years at or after the neutral year contribute zero.
ProjectionSeries project(const ScenarioConfig& scenario);

/// project() with transaction fee revenue forced to zero.
ProjectionSeries block_reward_only_series(const ScenarioConfig& scenario);

}
