#include "minecast/projection.hpp"

#include "minecast/error.hpp"

#include <algorithm>
#include <cmath>

namespace minecast {

ScenarioTrajectory ScenarioTrajectory::exponential(double rate)
{
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw ConfigError("exponential decarbonization rate must lie in [0, 1) (got {})", rate);
    }
    ScenarioTrajectory trajectory;
    trajectory._kind = TrajectoryKind::Exponential;
    trajectory._rate = rate;
    return trajectory;
}

ScenarioTrajectory ScenarioTrajectory::linear(double theta)
{
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ConfigError("linear decarbonization rate theta must lie in [0, 1] (got {})", theta);
    }
    ScenarioTrajectory trajectory;
    trajectory._kind = TrajectoryKind::Linear;
    trajectory._rate = theta;
    return trajectory;
}

ScenarioTrajectory ScenarioTrajectory::table(std::vector<TrajectoryPoint> points)
{
    if (points.empty()) {
        throw DatasetError("trajectory table is empty");
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.year_offset < b.year_offset; });

    if (points.front().year_offset != 0 || std::abs(points.front().intensity - 1.0) > 1e-9) {
        throw DatasetError("trajectory table must start at year offset 0 with intensity 1");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].intensity >= 0.0)) {
            throw DatasetError("trajectory intensity at year offset {} is negative", points[i].year_offset);
        }
        if (i > 0) {
            if (points[i].year_offset == points[i - 1].year_offset) {
                throw DatasetError("trajectory table repeats year offset {}", points[i].year_offset);
            }
            if (points[i].intensity > points[i - 1].intensity) {
                throw DatasetError("trajectory intensity increases at year offset {}", points[i].year_offset);
            }
        }
    }

    ScenarioTrajectory trajectory;
    trajectory._kind   = TrajectoryKind::Table;
    trajectory._points = std::move(points);
    return trajectory;
}

double ScenarioTrajectory::intensity(int t) const
{
    switch (_kind) {
    case TrajectoryKind::Exponential:
        return std::pow(1.0 - _rate, t);
    case TrajectoryKind::Linear:
        return std::max(0.0, 1.0 - _rate * t);
    case TrajectoryKind::Table:
        break;
    }

    if (t <= _points.front().year_offset) {
        return _points.front().intensity;
    }
    if (t >= _points.back().year_offset) {
        return _points.back().intensity;
    }
    auto upper = std::upper_bound(_points.begin(), _points.end(), t, [](int value, const auto& p) { return value < p.year_offset; });
    auto lower = upper - 1;
    const double frac = static_cast<double>(t - lower->year_offset) / (upper->year_offset - lower->year_offset);
    return std::max(0.0, lower->intensity + frac * (upper->intensity - lower->intensity));
}

std::optional<int> ScenarioTrajectory::neutral_year() const
{
    switch (_kind) {
    case TrajectoryKind::Exponential:
        return std::nullopt;
    case TrajectoryKind::Linear:
        return neutral_year_for_theta(_rate);
    case TrajectoryKind::Table:
        break;
    }

    for (int t = 0; t <= _points.back().year_offset; ++t) {
        if (intensity(t) <= 0.0) {
            return t;
        }
    }
    return std::nullopt;
}

std::optional<int> neutral_year_for_theta(double theta)
{
    if (!(theta > 0.0)) {
        return std::nullopt;
    }
    // absorbs the representation error of thetas like 0.05, where 1/theta is meant to be integral
    return static_cast<int>(std::ceil(1.0 / theta - 1e-9));
}

LinearFit fit_linear_theta(const ScenarioTrajectory& table)
{
    if (table.kind() != TrajectoryKind::Table) {
        throw ConfigError("only table trajectories can be fitted");
    }

    const auto points = table.points();
    if (points.size() < 3) {
        throw DatasetError("trajectory table needs at least 3 points for a fit (got {})", points.size());
    }

    // slope of (1 - intensity) on t through the origin
    double sxy = 0.0;
    double sxx = 0.0;
    std::size_t used = 0;
    for (const auto& p : points) {
        const double t = p.year_offset;
        sxy += t * (1.0 - p.intensity);
        sxx += t * t;
        ++used;
        if (p.intensity <= 0.0) {
            break;
        }
    }
    if (used < 3 || !(sxx > 0.0)) {
        throw DatasetError("trajectory table is degenerate: fewer than 3 points before intensity reaches zero");
    }

    LinearFit fit;
    fit.theta        = sxy / sxx;
    fit.neutral_year = neutral_year_for_theta(fit.theta);
    return fit;
}

void ScenarioConfig::validate() const
{
    market.validate();
    issuance.validate();
    cost.validate();
    if (!(ef0 >= 0.0 && ef0 <= 2.0)) {
        throw ConfigError("carbon.ef0 must lie in [0, 2] kg/kWh (got {})", ef0);
    }
    if (horizon < 1) {
        throw ConfigError("projection horizon must cover at least one year after 2020 (got offset {})", horizon);
    }
}

const YearRecord& ProjectionSeries::at_year(int calendarYear) const
{
    const int offset = calendarYear - base_year;
    if (offset < 0 || offset >= static_cast<int>(records.size())) {
        throw ConfigError("year {} is outside the projection ({}-{})", calendarYear, base_year, base_year + static_cast<int>(records.size()) - 1);
    }
    return records[static_cast<std::size_t>(offset)];
}

int ProjectionSeries::peak_year() const
{
    auto peak = std::max_element(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.emissions < b.emissions; });
    return peak == records.end() ? base_year : peak->year;
}

double ProjectionSeries::cumulative_through(int calendarYear) const
{
    if (records.empty() || calendarYear < base_year) {
        return 0.0;
    }
    const auto offset = std::min<std::size_t>(static_cast<std::size_t>(calendarYear - base_year), records.size() - 1);
    return records[offset].cumulative;
}

static ProjectionSeries run_projection(const ScenarioConfig& scenario, bool includeFees)
{
    scenario.validate();

    const auto supply = supply_table(scenario.issuance, scenario.horizon);

    MarketParams market = scenario.market;
    if (!includeFees) {
        market.beta = 0.0;
    }

    ProjectionSeries series;
    series.records.reserve(supply.size());

    double cumulative = 0.0;
    for (int t = 0; t <= scenario.horizon; ++t) {
        const auto rev = revenue(market, supply[static_cast<std::size_t>(t)], t);

        YearRecord record;
        record.year                 = base_year + t;
        record.block_reward_revenue = rev.block_reward_revenue;
        record.fee_revenue          = rev.fee_revenue;
        record.electricity          = electricity_consumption(rev, scenario.cost);
        record.ef                   = scenario.ef0 * scenario.trajectory.intensity(t);
        // TWh * kg/kWh = 1e9 kg = 1 Mt
        record.emissions = record.electricity * record.ef;
        if (t >= 1) {
            cumulative += record.emissions;
        }
        record.cumulative = cumulative;
        series.records.push_back(record);
    }
    series.cumulative_emissions = cumulative;
    return series;
}

ProjectionSeries project(const ScenarioConfig& scenario)
{
    return run_projection(scenario, true);
}

ProjectionSeries block_reward_only_series(const ScenarioConfig& scenario)
{
    return run_projection(scenario, false);
}

}
