#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "msloc/commands.hpp"

int main(int argc, char** argv) {
    using namespace msloc;

    CLI::App app{"Multistatic moving-target localization from BR, BRR and DOA measurements"};
    app.require_subcommand(1);

    const std::map<std::string, HeadingDomain> domains{{"full", HeadingDomain::full}, {"half", HeadingDomain::half}};

    CommandOptions sim_opts;
    std::string sim_path;
    std::uint64_t sim_seed = 0;
    auto* sim = app.add_subcommand("simulate", "Run one noisy trial and print truth, measurements and estimate");
    sim->add_option("scenario", sim_path, "Scenario JSON file")->required();
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "Override the scenario seed");
    sim->add_flag("--noise-off", sim_opts.noise_off, "Zero every noise sigma");
    sim->add_option("--heading-domain", sim_opts.heading_domain, "Heading search domain: full [0,360) or half [0,180]")
        ->transform(CLI::CheckedTransformer(domains));

    CommandOptions sweep_opts;
    std::string sweep_path, sweep_out;
    std::uint64_t sweep_seed = 0;
    std::size_t sweep_trials = 0;
    auto* sweep = app.add_subcommand("sweep", "Run the scenario's noise sweep and write a CSV");
    sweep->add_option("scenario", sweep_path, "Scenario JSON file")->required();
    sweep->add_option("-o,--out", sweep_out, "Output CSV path")->required();
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "Override the scenario seed");
    auto* sweep_trials_opt = sweep->add_option("--trials", sweep_trials, "Override the trial count");
    sweep->add_flag("--noise-off", sweep_opts.noise_off, "Zero the non-swept noise sigmas");
    sweep->add_option("--heading-domain", sweep_opts.heading_domain, "Heading search domain: full or half")
        ->transform(CLI::CheckedTransformer(domains));
    sweep->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores); output is identical for any value");

    OracleCommandOptions oracle_opts;
    std::string oracle_path;
    std::uint64_t oracle_seed = 0;
    auto* oracle = app.add_subcommand("oracle", "Check the forward model and estimator against independent oracles");
    oracle->add_option("scenario", oracle_path, "Scenario JSON file")->required();
    oracle->add_option("--samples", oracle_opts.samples, "Random instances to check");
    auto* oracle_seed_opt = oracle->add_option("--seed", oracle_seed, "Override the scenario seed");
    oracle->add_option("--alpha-resolution", oracle_opts.angle_resolution,
                       "TX angle recovery: cosines (default) or sines (arcsin negative control)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, AngleResolution>{
            {"cosines", AngleResolution::law_of_cosines}, {"sines", AngleResolution::law_of_sines}}));

    std::string plot_csv, plot_out;
    PlotMetric metric = PlotMetric::position;
    auto* plot = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
    plot->add_option("csv", plot_csv, "Sweep CSV")->required();
    plot->add_option("-o,--out", plot_out, "Output SVG path")->required();
    plot->add_option("--metric", metric, "pos or vel")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, PlotMetric>{{"pos", PlotMetric::position}, {"vel", PlotMetric::velocity}}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*sim) {
        if (*sim_seed_opt) sim_opts.seed = sim_seed;
        return cmd_simulate(sim_path, sim_opts, std::cout, std::cerr);
    }
    if (*sweep) {
        if (*sweep_seed_opt) sweep_opts.seed = sweep_seed;
        if (*sweep_trials_opt) sweep_opts.trials = sweep_trials;
        return cmd_sweep(sweep_path, sweep_out, sweep_opts, std::cout, std::cerr);
    }
    if (*oracle) {
        if (*oracle_seed_opt) oracle_opts.seed = oracle_seed;
        return cmd_oracle(oracle_path, oracle_opts, std::cout, std::cerr);
    }
    return cmd_plot(plot_csv, plot_out, metric, std::cerr);
}
