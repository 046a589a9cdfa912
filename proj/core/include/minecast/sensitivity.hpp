#pragma once

#include "minecast/projection.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minecast {

enum class Parameter
{
    Alpha,
    Gamma,
    Theta,
    Beta,
    PEle,
};

std::string_view to_string(Parameter parameter);
std::optional<Parameter> parse_parameter(std::string_view name);

/// Copy of the scenario with one parameter replaced. Setting theta switches the
/// trajectory to linear. The result is validated.
ScenarioConfig with_parameter(const ScenarioConfig& scenario, Parameter parameter, double value);

/// Copy of a linear-trajectory scenario whose horizon ends at the neutral year T.
ScenarioConfig to_neutrality(const ScenarioConfig& scenario);

struct LogDerivatives
{
    double alpha     = 0.0; // d log E / d alpha
    double gamma     = 0.0; // d log E / d gamma
    double neg_theta = 0.0; // -d log E / d theta
};

struct SensitivityReport
{
    double dlogE_dalpha     = 0.0;
    double dlogE_dgamma     = 0.0;
    double neg_dlogE_dtheta = 0.0;
    std::optional<LogDerivatives> fd_counterparts;
    double fd_step = 0.0;

    double base_cumulative = 0.0; // Mt, t = 1..T
    double alpha           = 0.0;
    double gamma           = 0.0;
    double theta           = 0.0;
    int neutral_year       = 0; // year offset T

    bool theta_dominates_gamma() const
    {
        return neg_dlogE_dtheta > dlogE_dgamma;
    }

    bool gamma_dominates_alpha() const
    {
        return dlogE_dgamma > dlogE_dalpha;
    }
};

/// Log-derivatives of the cumulative emissions through carbon neutrality with
/// respect to alpha, gamma and theta. Sums run over the same annual grid as
/// project(), so they are the exact derivatives of its output. Requires a linear
/// trajectory; throws NumericError when the cumulative emissions are zero.
SensitivityReport analytic_derivatives(const ScenarioConfig& scenario);

/// Central difference of log(cumulative emissions) from two projections at
/// value * (1 +- relativeStep). Returns d log E / d parameter (not negated).
double finite_difference(const ScenarioConfig& scenario, Parameter parameter, double relativeStep);

/// analytic_derivatives() plus the finite-difference counterparts.
SensitivityReport sensitivity_report(const ScenarioConfig& scenario, double relativeStep = 1e-4);

struct OrderingGrid
{
    double alpha_min = 0.3;
    double alpha_max = 1.0;
    double gamma_min = 0.01;
    double gamma_max = 0.2;
    double theta_min = 0.01;
    double theta_max = 0.05;
    int points_per_axis = 5;
};

struct OrderingPoint
{
    double alpha = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    LogDerivatives derivatives;
};

struct OrderingResult
{
    std::size_t points_checked = 0;
    std::vector<OrderingPoint> theta_counterexamples; // -dlogE/dtheta <= dlogE/dgamma
    std::vector<OrderingPoint> gamma_counterexamples; // dlogE/dgamma <= dlogE/dalpha

    bool holds() const
    {
        return theta_counterexamples.empty() && gamma_counterexamples.empty();
    }
};

/// Evaluates both orderings on an evenly spaced grid. Everything except
/// alpha, gamma and theta is taken from the base scenario.
OrderingResult ordering_check(const ScenarioConfig& base, const OrderingGrid& grid = {});

struct SweepEntry
{
    double value = 0.0;
    std::optional<ProjectionSeries> series;
    std::string error;
};

/// One projection per value with the other parameters held at the base.
/// Linear scenarios are integrated through their neutral year. Points run
/// concurrently; output order follows the input order. Invalid values yield an
/// entry with an error message instead of a series.
std::vector<SweepEntry> sweep(const ScenarioConfig& base, Parameter axis, std::span<const double> values);

}
