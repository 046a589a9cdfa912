#include "minecast/sensitivity.hpp"

#include "minecast/error.hpp"

#include <cmath>
#include <future>

namespace minecast {

std::string_view to_string(Parameter parameter)
{
    switch (parameter) {
    case Parameter::Alpha:
        return "alpha";
    case Parameter::Gamma:
        return "gamma";
    case Parameter::Theta:
        return "theta";
    case Parameter::Beta:
        return "beta";
    case Parameter::PEle:
        return "p_ele";
    }
    return "unknown";
}

std::optional<Parameter> parse_parameter(std::string_view name)
{
    for (auto p : {Parameter::Alpha, Parameter::Gamma, Parameter::Theta, Parameter::Beta, Parameter::PEle}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    return std::nullopt;
}

static double parameter_value(const ScenarioConfig& scenario, Parameter parameter)
{
    switch (parameter) {
    case Parameter::Alpha:
        return scenario.cost.alpha;
    case Parameter::Gamma:
        return scenario.market.gamma;
    case Parameter::Theta:
        if (scenario.trajectory.kind() != TrajectoryKind::Linear) {
            throw ConfigError("theta is only defined for a linear trajectory");
        }
        return scenario.trajectory.rate();
    case Parameter::Beta:
        return scenario.market.beta;
    case Parameter::PEle:
        return scenario.cost.p_ele;
    }
    return 0.0;
}

ScenarioConfig with_parameter(const ScenarioConfig& scenario, Parameter parameter, double value)
{
    ScenarioConfig result = scenario;
    switch (parameter) {
    case Parameter::Alpha:
        result.cost.alpha = value;
        break;
    case Parameter::Gamma:
        result.market.gamma = value;
        break;
    case Parameter::Theta:
        result.trajectory = ScenarioTrajectory::linear(value);
        break;
    case Parameter::Beta:
        result.market.beta = value;
        break;
    case Parameter::PEle:
        result.cost.p_ele = value;
        break;
    }
    result.validate();
    return result;
}

ScenarioConfig to_neutrality(const ScenarioConfig& scenario)
{
    if (scenario.trajectory.kind() != TrajectoryKind::Linear) {
        throw ConfigError("sensitivity analysis requires a linear decarbonization trajectory");
    }
    const auto neutral = scenario.trajectory.neutral_year();
    if (!neutral) {
        throw NumericError("theta is zero: the grid never reaches carbon neutrality and cumulative emissions are unbounded");
    }

    ScenarioConfig result = scenario;
    result.horizon        = *neutral;
    return result;
}

static ScenarioConfig integration_scenario(const ScenarioConfig& scenario)
{
    return scenario.trajectory.kind() == TrajectoryKind::Linear ? to_neutrality(scenario) : scenario;
}

SensitivityReport analytic_derivatives(const ScenarioConfig& scenario)
{
    const auto config = to_neutrality(scenario);
    const auto series = project(config);

    const double cumulative = series.cumulative_emissions;
    if (!(cumulative > 0.0)) {
        throw NumericError("cumulative emissions are zero; the log-derivative is undefined");
    }

    const double gamma = config.market.gamma;
    double dGamma      = 0.0;
    double negDTheta   = 0.0;
    for (int t = 1; t <= config.horizon; ++t) {
        const auto& record = series.records[static_cast<std::size_t>(t)];
        // clamped years have zero emissions and zero derivative
        if (!(record.ef > 0.0)) {
            continue;
        }
        // E(t) ~ (1 + gamma)^t (1 - theta t)
        dGamma += record.emissions * t / (1.0 + gamma);
        negDTheta += record.electricity * config.ef0 * t;
    }

    SensitivityReport report;
    report.dlogE_dalpha     = 1.0 / config.cost.alpha;
    report.dlogE_dgamma     = dGamma / cumulative;
    report.neg_dlogE_dtheta = negDTheta / cumulative;
    report.base_cumulative  = cumulative;
    report.alpha            = config.cost.alpha;
    report.gamma            = gamma;
    report.theta            = config.trajectory.rate();
    report.neutral_year     = config.horizon;
    return report;
}

double finite_difference(const ScenarioConfig& scenario, Parameter parameter, double relativeStep)
{
    if (!(relativeStep >= 1e-6 && relativeStep <= 1e-2)) {
        throw ConfigError("finite-difference step must lie in [1e-6, 1e-2] (got {})", relativeStep);
    }

    const double value = parameter_value(scenario, parameter);
    if (value == 0.0) {
        throw ConfigError("cannot take a relative step around {} = 0", to_string(parameter));
    }
    const double h = relativeStep * std::abs(value);

    auto log_cumulative = [&](double v) {
        ScenarioConfig perturbed;
        try {
            perturbed = integration_scenario(with_parameter(scenario, parameter, v));
        } catch (const ConfigError& e) {
            throw ConfigError("perturbing {} to {} leaves its valid range: {}", to_string(parameter), v, e.what());
        }
        const double cumulative = project(perturbed).cumulative_emissions;
        if (!(cumulative > 0.0)) {
            throw NumericError("cumulative emissions are zero at {} = {}; the log-derivative is undefined", to_string(parameter), v);
        }
        return std::log(cumulative);
    };

    return (log_cumulative(value + h) - log_cumulative(value - h)) / (2.0 * h);
}

SensitivityReport sensitivity_report(const ScenarioConfig& scenario, double relativeStep)
{
    auto report = analytic_derivatives(scenario);

    LogDerivatives fd;
    fd.alpha     = finite_difference(scenario, Parameter::Alpha, relativeStep);
    fd.gamma     = finite_difference(scenario, Parameter::Gamma, relativeStep);
    fd.neg_theta = -finite_difference(scenario, Parameter::Theta, relativeStep);

    report.fd_counterparts = fd;
    report.fd_step         = relativeStep;
    return report;
}

static std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> values;
    if (n == 1) {
        values.push_back(lo);
        return values;
    }
    for (int i = 0; i < n; ++i) {
        values.push_back(lo + (hi - lo) * i / (n - 1));
    }
    return values;
}

OrderingResult ordering_check(const ScenarioConfig& base, const OrderingGrid& grid)
{
    if (grid.points_per_axis < 1) {
        throw ConfigError("ordering grid needs at least one point per axis");
    }

    OrderingResult result;
    for (double alpha : linspace(grid.alpha_min, grid.alpha_max, grid.points_per_axis)) {
        for (double gamma : linspace(grid.gamma_min, grid.gamma_max, grid.points_per_axis)) {
            for (double theta : linspace(grid.theta_min, grid.theta_max, grid.points_per_axis)) {
                auto config = with_parameter(base, Parameter::Alpha, alpha);
                config      = with_parameter(config, Parameter::Gamma, gamma);
                config      = with_parameter(config, Parameter::Theta, theta);

                const auto report = analytic_derivatives(config);
                OrderingPoint point{alpha, gamma, theta, {report.dlogE_dalpha, report.dlogE_dgamma, report.neg_dlogE_dtheta}};

                ++result.points_checked;
                if (!report.theta_dominates_gamma()) {
                    result.theta_counterexamples.push_back(point);
                }
                if (!report.gamma_dominates_alpha()) {
                    result.gamma_counterexamples.push_back(point);
                }
            }
        }
    }
    return result;
}

std::vector<SweepEntry> sweep(const ScenarioConfig& base, Parameter axis, std::span<const double> values)
{
    std::vector<std::future<SweepEntry>> pending;
    pending.reserve(values.size());
    for (double value : values) {
        pending.push_back(std::async(std::launch::async, [&base, axis, value]() {
            SweepEntry entry;
            entry.value = value;
            try {
                entry.series = project(integration_scenario(with_parameter(base, axis, value)));
            } catch (const Error& e) {
                entry.error = e.what();
            }
            return entry;
        }));
    }

    std::vector<SweepEntry> entries;
    entries.reserve(values.size());
    for (auto& future : pending) {
        entries.push_back(future.get());
    }
    return entries;
}

}
