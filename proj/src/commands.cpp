#include "msloc/commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"
#include "msloc/montecarlo.hpp"
#include "msloc/oracle_suite.hpp"
#include "msloc/scenario.hpp"
#include "msloc/sweep_csv.hpp"

namespace msloc {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        err << "estimation failed: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

ScenarioFile load(const std::filesystem::path& path, const CommandOptions& opts) {
    auto s = parse_scenario(path);
    if (opts.seed) s.seed = *opts.seed;
    if (opts.trials) {
        if (*opts.trials < 1) throw ValidationError("trials", "must be >= 1");
        s.trials = *opts.trials;
    }
    if (opts.noise_off) s.noise = {};
    return s;
}

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

int cmd_simulate(const std::filesystem::path& scenario, const CommandOptions& opts, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load(scenario, opts);
        const auto spec = file.trial_spec({opts.heading_domain});
        const auto truth = ground_truth(spec.scene, spec.target);
        const auto meas =
            generate_trial_measurements(truth, spec.target.position.angle_rad, spec.noise, spec.master_seed, 0);

        out << "pairs: " << spec.scene.pair_count() << '\n'
            << "seed: " << spec.master_seed << '\n'
            << "noise: sigma_br_m=" << f6(spec.noise.sigma_br_m) << " sigma_brr_mps=" << f6(spec.noise.sigma_brr_mps)
            << " sigma_doa_deg=" << f6(spec.noise.sigma_doa_deg) << '\n'
            << "truth.position: range_m=" << f6(spec.target.position.range_m)
            << " angle_deg=" << f6(rad_to_deg(spec.target.position.angle_rad)) << '\n'
            << "truth.velocity: speed_mps=" << f6(spec.target.velocity.speed_mps)
            << " heading_deg=" << f6(rad_to_deg(spec.target.velocity.heading_rad)) << '\n';
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const auto& tx = spec.scene.tx(i);
            out << "pair[" << i + 1 << "].tx: range_m=" << f6(tx.range_m) << " angle_deg=" << f6(rad_to_deg(tx.angle_rad))
                << '\n'
                << "pair[" << i + 1 << "].truth: target_path_m=" << f6(truth[i].target_path_range_m)
                << " br_m=" << f6(truth[i].bistatic_range_m) << " brr_mps=" << f6(truth[i].bistatic_range_rate_mps)
                << " tx_angle_deg=" << f6(rad_to_deg(truth[i].tx_angle_rad)) << '\n'
                << "pair[" << i + 1 << "].measured: br_m=" << f6(meas.br_m[i]) << " brr_mps=" << f6(meas.brr_mps[i])
                << " doa_deg=" << f6(rad_to_deg(meas.doa_rad[i])) << '\n';
        }

        Estimate est;
        try {
            est = estimate(spec.scene, meas, spec.estimator);
        } catch (const Error& e) {
            err << "estimation failed: " << e.what() << '\n';
            return static_cast<int>(kExitEstimation);
        }
        const auto& pos = est.position_part;
        for (std::size_t i = 0; i < pos.per_pair_range_m.size(); ++i) {
            out << "pair[" << i + 1 << "].range_estimate_m: " << f6(pos.per_pair_range_m[i]) << '\n';
        }
        for (auto i : pos.excluded_pairs) out << "pair[" << i + 1 << "].excluded: degenerate range inversion\n";
        out << "estimate.position: range_m=" << f6(pos.position.range_m)
            << " angle_deg=" << f6(rad_to_deg(pos.position.angle_rad)) << '\n';
        if (est.velocity_part) {
            const auto& v = *est.velocity_part;
            for (std::size_t i = 0; i < v.predicted_brr_mps.size(); ++i) {
                out << "pair[" << i + 1 << "].predicted_brr_mps: " << f6(v.predicted_brr_mps[i]) << '\n';
            }
            out << "estimate.velocity: speed_mps=" << f6(v.velocity.speed_mps)
                << " heading_deg=" << f6(rad_to_deg(v.velocity.heading_rad)) << '\n'
                << "estimate.velocity_residual_mps: " << f6(v.residual_mps) << '\n'
                << "estimate.velocity_condition: " << f6(v.condition_number) << '\n';
            if (v.heading_degenerate) out << "note: heading undefined at zero speed, reported as 0\n";
            if (v.speed_clamped) out << "note: speed clamped to max_speed_mps\n";
        } else {
            out << "note: velocity requires >= 2 pairs\n";
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_sweep(const std::filesystem::path& scenario, const std::filesystem::path& csv_out,
              const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto file = load(scenario, opts);
        const auto spec = file.sweep_spec({opts.heading_domain});
        std::ofstream csv(csv_out, std::ios::binary | std::ios::trunc);
        if (!csv) throw std::runtime_error("cannot write " + csv_out.string());
        const auto points = run_sweep(spec, {opts.threads});
        write_sweep_csv(csv, spec.swept_channel, points, spec.base.scene.pair_count());
        csv.flush();
        if (!csv) throw std::runtime_error("write failed: " + csv_out.string());
        out << "wrote " << points.size() << " rows to " << csv_out.string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_oracle(const std::filesystem::path& scenario, const OracleCommandOptions& opts, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        if (opts.samples == 0) throw ValidationError("samples", "must be >= 1");
        const auto file = parse_scenario(scenario);
        OracleOptions o;
        o.samples = opts.samples;
        o.seed = opts.seed.value_or(file.seed);
        o.angle_resolution = opts.angle_resolution;
        const NoiseSpec n = file.noise;
        if (n.sigma_br_m > 0.0 || n.sigma_brr_mps > 0.0 || n.sigma_doa_deg > 0.0) o.grid_noise = n;
        const auto scene = file.scene();
        const auto report = run_oracle_suite(scene, file.target_state(), o);
        print_oracle_report(out, report, scene, o);
        return static_cast<int>(report.passed() ? kExitOk : kExitOracle);
    });
}

int cmd_plot(const std::filesystem::path& csv, const std::filesystem::path& svg_out, PlotMetric metric,
             std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream in(csv, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + csv.string());
        const auto rows = read_sweep_csv(in);
        if (rows.empty()) throw ParseError(csv.string(), "CSV has no data rows");
        const auto svg = render_sweep_svg(rows, metric);
        std::ofstream o(svg_out, std::ios::binary | std::ios::trunc);
        if (!o) throw std::runtime_error("cannot write " + svg_out.string());
        o << svg;
        return static_cast<int>(o ? kExitOk : kExitUsage);
    });
}

}  // namespace msloc
