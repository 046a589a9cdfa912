#include "cli.hpp"

#include "config.hpp"
#include "output.hpp"
#include "svg.hpp"

#include "minecast/csv.hpp"
#include "minecast/datasets.hpp"
#include "minecast/error.hpp"
#include "minecast/sensitivity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>

namespace minecast::app {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double adopted_alpha = 0.6;
constexpr int reporting_year   = 2100;

struct GlobalOptions
{
    std::string config_path;
    std::string out_dir;
    std::string formats;
    int horizon_year = 0;
};

struct Context
{
    AppConfig config;
    std::filesystem::path data_dir;
    std::filesystem::path out_dir;
    std::set<std::string> formats;
    std::optional<int> horizon_year;
    std::ostream& out;

    bool wants(const char* format) const
    {
        return formats.count(format) > 0;
    }
};

std::set<std::string> parse_formats(const std::string& list)
{
    std::set<std::string> formats;
    std::string_view rest = list;
    while (!rest.empty()) {
        const auto end = rest.find(',');
        const auto item = std::string(rest.substr(0, end));
        rest.remove_prefix(end == std::string_view::npos ? rest.size() : end + 1);
        if (item.empty()) {
            continue;
        }
        if (item != "csv" && item != "json" && item != "svg") {
            throw ConfigError("--format accepts csv, json and svg (got '{}')", item);
        }
        formats.insert(item);
    }
    if (formats.empty()) {
        throw ConfigError("--format lists no formats");
    }
    return formats;
}

Context make_context(const GlobalOptions& opts, std::ostream& out)
{
    Context ctx{opts.config_path.empty() ? default_config() : load_config(opts.config_path), data_directory(), {}, {}, std::nullopt, out};
    ctx.out_dir = opts.out_dir.empty() ? ctx.config.output_dir : std::filesystem::path(opts.out_dir);
    ctx.formats = opts.formats.empty() ? ctx.config.formats : parse_formats(opts.formats);
    if (opts.horizon_year != 0) {
        if (opts.horizon_year <= base_year) {
            throw ConfigError("--horizon must be a calendar year after {} (got {})", base_year, opts.horizon_year);
        }
        ctx.horizon_year = opts.horizon_year;
    }
    return ctx;
}

std::string dump(const ordered_json& doc)
{
    return doc.dump(2) + "\n";
}

ordered_json optional_year(const std::optional<int>& offset)
{
    return offset ? ordered_json(base_year + *offset) : ordered_json(nullptr);
}

void report_written(const Context& ctx, const OutputSet& outputs)
{
    for (const auto& path : outputs.commit()) {
        ctx.out << "wrote " << path.string() << "\n";
    }
}

// project ------------------------------------------------------------------

ordered_json projection_summary(const ResolvedScenario& resolved, const ProjectionSeries& series)
{
    const auto& s     = resolved.scenario;
    const auto& first = series.records.front();

    ordered_json doc;
    doc["scenario"]        = resolved.name;
    doc["ef0_kg_kwh"]      = round6(s.ef0);
    doc["v0_usd"]          = round6(s.market.v0);
    doc["alpha"]           = round6(s.cost.alpha);
    doc["gamma"]           = round6(s.market.gamma);
    doc["beta"]            = round6(s.market.beta);
    doc["p_ele_usd_kwh"]   = round6(s.cost.p_ele);
    doc["horizon_year"]    = base_year + s.horizon;
    doc["neutral_year"]    = optional_year(s.trajectory.neutral_year());
    doc["electricity_2020_twh"] = round6(first.electricity);
    doc["emissions_2020_mt"]    = round6(first.emissions);
    doc["fee_share_2020"]       = round6(first.fee_revenue / (first.fee_revenue + first.block_reward_revenue));
    if (s.horizon >= reporting_year - base_year) {
        doc["electricity_2100_twh"] = round6(series.at_year(reporting_year).electricity);
    }
    doc["cumulative_to_2100_mt"] = round6(series.cumulative_through(reporting_year));
    doc["cumulative_mt"]         = round6(series.cumulative_emissions);
    doc["peak_year"]             = series.peak_year();
    if (resolved.emission_factor) {
        doc["china_share"] = round6(resolved.emission_factor->china_share);
    }
    return doc;
}

std::vector<std::pair<double, double>> column(const ProjectionSeries& series, double YearRecord::*field, double scale = 1.0)
{
    std::vector<std::pair<double, double>> points;
    for (const auto& r : series.records) {
        points.emplace_back(r.year, r.*field * scale);
    }
    return points;
}

int cmd_project(const Context& ctx, const std::string& scenarioOption)
{
    std::vector<std::string> names;
    const auto requested = scenarioOption.empty() ? ctx.config.scenario : scenarioOption;
    if (requested == "all") {
        names = {"bau", "s450", "s550"};
    } else {
        names = {requested};
    }

    OutputSet outputs(ctx.out_dir);
    ChartPanel electricityPanel{"Annual electricity consumption", "year", "TWh", {}};
    ChartPanel emissionsPanel{"Annual CO2 emissions", "year", "Mt CO2", {}};
    std::vector<ChartPanel> fig3;

    for (const auto& name : names) {
        const auto resolved = resolve_scenario(ctx.config, name, ctx.data_dir, ctx.horizon_year);
        const auto series   = project(resolved.scenario);
        const auto rewards  = block_reward_only_series(resolved.scenario);

        if (ctx.wants("csv")) {
            outputs.add(fmt::format("projection_{}.csv", name), projection_csv(series));
            outputs.add(fmt::format("block_reward_only_{}.csv", name), projection_csv(rewards));
        }
        if (ctx.wants("json")) {
            outputs.add(fmt::format("summary_{}.json", name), dump(projection_summary(resolved, series)));
        }

        if (electricityPanel.series.empty()) {
            electricityPanel.series.push_back({"electricity", column(series, &YearRecord::electricity), false});
            electricityPanel.series.push_back({"block rewards only", column(rewards, &YearRecord::electricity), true});

            fig3.push_back({"Mining revenue", "year", "billion USD",
                            {{"block rewards", column(series, &YearRecord::block_reward_revenue, 1e-9), false},
                             {"transaction fees", column(series, &YearRecord::fee_revenue, 1e-9), false}}});
            fig3.push_back({"Electricity consumption", "year", "TWh",
                            {{"rewards and fees", column(series, &YearRecord::electricity), false},
                             {"block rewards only", column(rewards, &YearRecord::electricity), true}}});
        }
        emissionsPanel.series.push_back({name, column(series, &YearRecord::emissions), false});

        ctx.out << fmt::format("{}: EF(0) {} kg/kWh, V(0) {} USD, ELE(2020) {} TWh, E(2020) {} Mt, cumulative to {} {} Mt\n",
                               name,
                               format_number(resolved.scenario.ef0),
                               format_number(resolved.scenario.market.v0),
                               format_number(series.records.front().electricity),
                               format_number(series.records.front().emissions),
                               std::min(reporting_year, base_year + resolved.scenario.horizon),
                               format_number(series.cumulative_through(reporting_year)));
    }

    if (ctx.wants("svg")) {
        outputs.add("fig1.svg", render_svg("Electricity consumption and CO2 emissions of Bitcoin mining", {electricityPanel, emissionsPanel}, 2));
        outputs.add("fig3.svg", render_svg("Mining revenue and electricity consumption", fig3, 2));
    }

    report_written(ctx, outputs);
    return 0;
}

// ef -----------------------------------------------------------------------

struct EfOptions
{
    std::string pools;
    std::string pool_regions;
    std::string ef_world;
    std::string ef_china_grids;
    std::string generation;
};

int cmd_ef(const Context& ctx, const EfOptions& opts)
{
    DatasetPaths paths = ctx.config.datasets.value_or(DatasetPaths{"pools.csv", "pool_regions.csv", "ef_world.csv", "ef_china_grids.csv", "china_province_generation.csv"});
    if (!opts.pools.empty()) {
        paths.pools = opts.pools;
        // a different pool file rarely matches the bundled breakdown
        paths.pool_regions.reset();
    }
    if (!opts.pool_regions.empty()) {
        paths.pool_regions = opts.pool_regions;
    }
    if (!opts.ef_world.empty()) {
        paths.ef_world = opts.ef_world;
    }
    if (!opts.ef_china_grids.empty()) {
        paths.ef_china_grids = opts.ef_china_grids;
        paths.province_generation.reset();
    }
    if (!opts.generation.empty()) {
        paths.province_generation = opts.generation;
    }

    const auto inputs = load_emission_factor_inputs(paths, ctx.data_dir);
    const auto result = build_emission_factor(inputs);

    ordered_json doc;
    doc["ef0_kg_kwh"]  = round6(result.ef0);
    doc["china_share"] = round6(result.china_share);
    doc["china_generation_weighted_ef_kg_kwh"] =
        result.china_generation_weighted_ef ? ordered_json(round6(*result.china_generation_weighted_ef)) : ordered_json(nullptr);
    doc["reference_year"] = ef_reference_year;
    doc["pools"]          = inputs.pools.size();
    doc["regions"]        = result.distribution.shares.size();

    OutputSet outputs(ctx.out_dir);
    outputs.add("distribution.csv", distribution_csv(result.distribution));
    outputs.add("ef0.json", dump(doc));

    ctx.out << fmt::format("EF(0) {} kg/kWh, China share {}\n", format_number(result.ef0), format_number(result.china_share));
    report_written(ctx, outputs);
    return 0;
}

// sensitivity --------------------------------------------------------------

ScenarioConfig sensitivity_scenario(const Context& ctx)
{
    auto resolved = resolve_scenario(ctx.config, ctx.config.scenario, ctx.data_dir, ctx.horizon_year);
    auto scenario = resolved.scenario;

    if (ctx.config.sensitivity_theta) {
        scenario.trajectory = ScenarioTrajectory::linear(*ctx.config.sensitivity_theta);
    } else if (scenario.trajectory.kind() == TrajectoryKind::Table) {
        scenario.trajectory = ScenarioTrajectory::linear(fit_linear_theta(scenario.trajectory).theta);
    } else if (scenario.trajectory.kind() != TrajectoryKind::Linear) {
        throw ConfigError("sensitivity analysis needs a linear or table trajectory; scenario '{}' is exponential", ctx.config.scenario);
    }
    return scenario;
}

ordered_json derivatives_json(double alpha, double gamma, double negTheta)
{
    ordered_json doc;
    doc["dlogE_dalpha"]     = round6(alpha);
    doc["dlogE_dgamma"]     = round6(gamma);
    doc["neg_dlogE_dtheta"] = round6(negTheta);
    return doc;
}

int cmd_sensitivity(const Context& ctx, std::optional<double> step, const std::vector<std::string>& axes)
{
    const auto scenario = sensitivity_scenario(ctx);
    const auto report   = sensitivity_report(scenario, step.value_or(ctx.config.fd_step));
    const auto& fd      = *report.fd_counterparts;
    const auto ordering = ordering_check(scenario);

    auto rel_gap = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };

    ordered_json doc;
    doc["alpha"]              = round6(report.alpha);
    doc["gamma"]              = round6(report.gamma);
    doc["theta"]              = round6(report.theta);
    doc["neutral_year"]       = base_year + report.neutral_year;
    doc["base_cumulative_mt"] = round6(report.base_cumulative);
    doc["analytic"]           = derivatives_json(report.dlogE_dalpha, report.dlogE_dgamma, report.neg_dlogE_dtheta);
    doc["finite_difference"]  = derivatives_json(fd.alpha, fd.gamma, fd.neg_theta);
    doc["fd_relative_step"]   = report.fd_step;
    doc["max_relative_gap"]   = round6(std::max({rel_gap(report.dlogE_dalpha, fd.alpha),
                                                 rel_gap(report.dlogE_dgamma, fd.gamma),
                                                 rel_gap(report.neg_dlogE_dtheta, fd.neg_theta)}));

    ordered_json orderings;
    orderings["theta_over_gamma"]              = report.theta_dominates_gamma();
    orderings["gamma_over_alpha"]              = report.gamma_dominates_alpha();
    orderings["grid_points"]                   = ordering.points_checked;
    orderings["grid_theta_counterexamples"]    = ordering.theta_counterexamples.size();
    orderings["grid_gamma_counterexamples"]    = ordering.gamma_counterexamples.size();
    doc["orderings"]                           = orderings;

    OutputSet outputs(ctx.out_dir);
    std::vector<ChartPanel> panels;
    ordered_json sweeps = ordered_json::object();

    for (const auto& [parameter, values] : ctx.config.sweeps) {
        const auto name = std::string(to_string(parameter));
        if (!axes.empty() && std::find(axes.begin(), axes.end(), name) == axes.end()) {
            continue;
        }

        const auto entries = sweep(scenario, parameter, values);

        CsvWriter csv({"value", "year", "electricity_twh", "ef_kg_kwh", "emissions_mt", "cumulative_mt"});
        ChartPanel panel{fmt::format("Emissions, {} sweep", name), "year", "Mt CO2", {}};
        ordered_json list = ordered_json::array();
        for (const auto& entry : entries) {
            ordered_json item;
            item["value"] = entry.value;
            if (!entry.series) {
                item["error"] = entry.error;
                list.push_back(item);
                continue;
            }
            const auto& series = *entry.series;
            item["cumulative_mt"] = round6(series.cumulative_emissions);
            item["peak_year"]     = series.peak_year();
            list.push_back(item);

            std::vector<std::pair<double, double>> points;
            for (const auto& r : series.records) {
                csv.add_row({format_number(entry.value), std::to_string(r.year), format_number(r.electricity),
                             format_number(r.ef), format_number(r.emissions), format_number(r.cumulative)});
                if (r.year > base_year) {
                    points.emplace_back(r.year, r.emissions);
                }
            }
            panel.series.push_back({fmt::format("{} = {}", name, format_number(entry.value)), std::move(points), false});
        }
        sweeps[name] = list;
        panels.push_back(std::move(panel));

        if (ctx.wants("csv")) {
            outputs.add(fmt::format("sweep_{}.csv", name), csv.str());
        }
    }
    doc["sweeps"] = sweeps;

    outputs.add("sensitivity.json", dump(doc));
    if (ctx.wants("svg") && !panels.empty()) {
        outputs.add("fig5.svg", render_svg("CO2 emissions under different parameter choices", panels, 3));
    }

    ctx.out << fmt::format("dlogE/dalpha {} (fd {}), dlogE/dgamma {} (fd {}), -dlogE/dtheta {} (fd {})\n",
                           format_number(report.dlogE_dalpha), format_number(fd.alpha),
                           format_number(report.dlogE_dgamma), format_number(fd.gamma),
                           format_number(report.neg_dlogE_dtheta), format_number(fd.neg_theta));
    ctx.out << fmt::format("-dlogE/dtheta > dlogE/dgamma: {}; dlogE/dgamma > dlogE/dalpha: {}; grid counterexamples: {}\n",
                           report.theta_dominates_gamma(), report.gamma_dominates_alpha(),
                           ordering.theta_counterexamples.size() + ordering.gamma_counterexamples.size());
    report_written(ctx, outputs);
    return 0;
}

// alpha --------------------------------------------------------------------

int cmd_alpha(const Context& ctx, const std::string& hardwarePath, int fromYear)
{
    const auto path  = resolve_data_path(hardwarePath.empty() ? std::filesystem::path("hardware_asic.csv") : std::filesystem::path(hardwarePath), ctx.data_dir);
    const auto specs = read_hardware_csv(path);
    const double mean = average_alpha(specs, fromYear);
    const auto count  = std::count_if(specs.begin(), specs.end(), [fromYear](const auto& s) { return s.release_year >= fromYear; });

    ordered_json doc;
    doc["from_year"]     = fromYear;
    doc["count"]         = count;
    doc["mean_alpha"]    = round6(mean);
    doc["adopted_alpha"] = adopted_alpha;

    OutputSet outputs(ctx.out_dir);
    outputs.add("alpha.csv", hardware_alpha_csv(specs));
    outputs.add("alpha.json", dump(doc));

    ctx.out << fmt::format("mean alpha over {} specs released {} or later: {} (adopted default {})\n",
                           count, fromYear, format_number(mean), format_number(adopted_alpha));
    report_written(ctx, outputs);
    return 0;
}

// calibrate ----------------------------------------------------------------

int cmd_calibrate(const Context& ctx, std::optional<double> targetTwh)
{
    const auto& config = ctx.config;
    const double beta  = resolve_beta(config);
    const double target = targetTwh.value_or(config.calibration_target_twh.value_or(49.0));

    config.issuance.validate();
    config.cost.validate();
    const double v0 = calibrate_v0(target, config.cost.alpha, config.cost.p_ele, beta, config.issuance);

    MarketParams market{v0, config.gamma, beta};
    const auto rev0 = revenue(market, config.issuance, 0);

    ordered_json doc;
    doc["target_electricity_twh"] = round6(target);
    doc["alpha"]                  = round6(config.cost.alpha);
    doc["p_ele_usd_kwh"]          = round6(config.cost.p_ele);
    doc["beta"]                   = round6(beta);
    doc["q0_btc"]                 = round6(coins_minted_in_year(config.issuance, 0));
    doc["Q0_btc"]                 = round6(cumulative_supply(config.issuance, 0));
    doc["v0_usd"]                 = round6(v0);
    doc["revenue_2020_usd"]       = round6(rev0.total);
    doc["fee_share_2020"]         = round6(rev0.fee_revenue / rev0.total);

    OutputSet outputs(ctx.out_dir);
    outputs.add("calibration.json", dump(doc));

    ctx.out << fmt::format("V(0) = {} USD for ELE(2020) = {} TWh (fee share {})\n",
                           format_number(v0), format_number(target), format_number(rev0.fee_revenue / rev0.total));
    report_written(ctx, outputs);
    return 0;
}

}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Projects Bitcoin mining electricity use and CO2 emissions", "minecast"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_path, "JSON configuration file (defaults to the bundled base case)");
    app.add_option("--out", global.out_dir, "Output directory");
    app.add_option("--format", global.formats, "Comma separated output formats: csv,json,svg");
    app.add_option("--horizon", global.horizon_year, "Last calendar year of the projection");

    auto* project = app.add_subcommand("project", "Annual electricity and emissions projection");
    std::string scenario;
    project->add_option("--scenario", scenario, "bau, s450, s550, custom or all");
    project->fallthrough();

    auto* ef = app.add_subcommand("ef", "Hash-rate distribution and weighted emission factor EF(0)");
    EfOptions efOptions;
    ef->add_option("--pools", efOptions.pools, "pools.csv");
    ef->add_option("--pool-regions", efOptions.pool_regions, "pool_regions.csv");
    ef->add_option("--ef-world", efOptions.ef_world, "ef_world.csv");
    ef->add_option("--ef-china-grids", efOptions.ef_china_grids, "ef_china_grids.csv");
    ef->add_option("--generation", efOptions.generation, "china_province_generation.csv");
    ef->fallthrough();

    auto* sens = app.add_subcommand("sensitivity", "Log-derivatives of cumulative emissions and parameter sweeps");
    std::optional<double> step;
    std::vector<std::string> axes;
    sens->add_option("--step", step, "Relative finite-difference step");
    sens->add_option("--axis", axes, "Only sweep these parameters");
    sens->fallthrough();

    auto* alpha = app.add_subcommand("alpha", "Electricity cost share from hardware specifications");
    std::string hardware;
    int fromYear = 2016;
    alpha->add_option("--hardware", hardware, "Hardware CSV");
    alpha->add_option("--from-year", fromYear, "Only average hardware released in or after this year");
    alpha->fallthrough();

    auto* calibrate = app.add_subcommand("calibrate", "Market capitalization V(0) matching the 2020 electricity target");
    std::optional<double> target;
    calibrate->add_option("--target-twh", target, "Electricity consumption in 2020, TWh");
    calibrate->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "minecast: " << e.what() << "\n";
        return 1;
    }

    try {
        const auto ctx = make_context(global, out);
        if (project->parsed()) {
            return cmd_project(ctx, scenario);
        }
        if (ef->parsed()) {
            return cmd_ef(ctx, efOptions);
        }
        if (sens->parsed()) {
            return cmd_sensitivity(ctx, step, axes);
        }
        if (alpha->parsed()) {
            return cmd_alpha(ctx, hardware, fromYear);
        }
        if (calibrate->parsed()) {
            return cmd_calibrate(ctx, target);
        }
    } catch (const Error& e) {
        err << "minecast: error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "minecast: error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}
