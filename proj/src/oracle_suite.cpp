#include "msloc/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"
#include "msloc/random.hpp"

namespace msloc {

namespace {

constexpr double kMinSeparation = 2.0;

bool usable(const Scene& scene, const TargetState& s) {
    if (s.position.range_m < kMinSeparation) return false;
    if (s.position.range_m > scene.max_range_m() || s.velocity.speed_mps > scene.max_speed_mps()) return false;
    return std::all_of(scene.txs().begin(), scene.txs().end(),
                       [&](const PolarPoint& tx) { return polar_distance(tx, s.position) >= kMinSeparation; });
}

TargetState draw_target(const Scene& scene, RandomStream& rng) {
    double max_tx = 0.0;
    for (const auto& tx : scene.txs()) max_tx = std::max(max_tx, tx.range_m);
    const double r_hi = std::min(scene.max_range_m(), 2.0 * max_tx);
    const double v_hi = std::min(scene.max_speed_mps(), 30.0);
    for (;;) {
        TargetState s;
        s.position = {kMinSeparation + (r_hi - kMinSeparation) * rng.next_uniform(), kPi * rng.next_uniform()};
        s.velocity = {std::min(1.0, v_hi) + (v_hi - std::min(1.0, v_hi)) * rng.next_uniform(),
                      wrap_two_pi(kTwoPi * rng.next_uniform())};
        if (usable(scene, s)) return s;
    }
}

MeasurementSet noise_free(const Scene& scene, const TargetState& s, AngleResolution res) {
    const auto truth = ground_truth(scene, s, res);
    RandomStream unused(0);
    return generate_measurements(truth, s.position.angle_rad, NoiseSpec{}, unused);
}

void record(OracleReport& rep, double& slot, double value, double threshold, const char* check, std::size_t sample,
            std::size_t pair, const TargetState& s) {
    slot = std::max(slot, value);
    if (!(value <= threshold)) rep.failures.push_back({check, value, threshold, sample, pair, s});
}

void check_grid(OracleReport& rep, const Scene& scene, const TargetState& s, std::size_t k,
                const OracleOptions& options, const EstimatorOptions& est_opts, bool cell_check) {
    const auto& th = options.thresholds;
    const auto truth = ground_truth(scene, s, options.angle_resolution);
    auto br = derive_stream(options.seed, k, NoiseChannel::br);
    auto brr = derive_stream(options.seed, k, NoiseChannel::brr);
    auto doa = derive_stream(options.seed, k, NoiseChannel::doa);
    const auto noisy = generate_measurements(truth, s.position.angle_rad, options.grid_noise, br, brr, doa);
    try {
        const auto pos = estimate_position(scene, noisy).position;
        const auto ls = estimate_velocity(scene, noisy, pos, est_opts);
        const auto grid =
            grid_search_velocity(scene, noisy, pos, options.grid_v_steps, options.grid_phi_steps, est_opts);
        if (!cell_check) {
            // The continuous optimum can never be worse than a grid node unless clamped.
            if (!ls.speed_clamped) {
                const double excess = ls.residual_mps - grid.residual_mps;
                record(rep, rep.max_ls_objective_excess_mps, excess, 1e-9 * (1.0 + grid.residual_mps),
                       "ls_objective_above_grid", k, 0, s);
            }
            return;
        }
        ++rep.grid_checked;
        const auto cells = velocity_grid_cell_distance(scene, options.grid_v_steps, options.grid_phi_steps,
                                                       ls.velocity, grid.velocity, est_opts.heading_domain);
        record(rep, rep.max_grid_cells, static_cast<double>(cells), th.grid_cells, "ls_vs_grid_cells", k, 0, s);
    } catch (const SingularGeometry&) {
        // Collinear measurement directions; velocity is not identifiable.
    } catch (const Error& e) {
        rep.failures.push_back({std::string("estimator_error: ") + e.what(), 0.0, 0.0, k, 0, s});
    }
}

}  // namespace

OracleReport run_oracle_suite(const Scene& scene, const TargetState& reference, const OracleOptions& options) {
    if (options.samples == 0) throw ValidationError("samples", "must be >= 1");
    const auto& th = options.thresholds;
    EstimatorOptions est_opts;
    est_opts.angle_resolution = options.angle_resolution;

    OracleReport rep;
    rep.samples = options.samples;
    auto rng = derive_stream(options.seed, 0, 0xC0FFEE);
    for (std::size_t k = 0; k < options.samples; ++k) {
        const TargetState s = (k == 0 && usable(scene, reference)) ? reference : draw_target(scene, rng);

        for (std::size_t i = 0; i < scene.pair_count(); ++i) {
            const double closed = bistatic_range_rate(scene, i, s, options.angle_resolution);
            const double fd = brr_finite_difference(scene, i, s, options.fd_step_s);
            record(rep, rep.max_brr_fd_error_mps, std::abs(closed - fd), th.brr_fd_mps, "brr_vs_finite_difference", k,
                   i, s);
        }

        const auto meas = noise_free(scene, s, options.angle_resolution);
        try {
            const auto est = estimate(scene, meas, est_opts);
            record(rep, rep.max_position_error_m, polar_distance(est.position_part.position, s.position),
                   th.position_m, "position_round_trip", k, 0, s);
            if (est.velocity_part) {
                const auto a = to_cartesian(est.velocity_part->velocity);
                const auto b = to_cartesian(s.velocity);
                record(rep, rep.max_velocity_error_mps, std::hypot(a.x - b.x, a.y - b.y), th.velocity_mps,
                       "velocity_round_trip", k, 0, s);
                record(rep, rep.max_heading_error_rad,
                       angular_distance(est.velocity_part->velocity.heading_rad, s.velocity.heading_rad),
                       th.heading_rad, "heading_round_trip", k, 0, s);
            }
        } catch (const SingularGeometry&) {
        } catch (const Error& e) {
            rep.failures.push_back({std::string("estimator_error: ") + e.what(), 0.0, 0.0, k, 0, s});
        }

        if (k < options.grid_samples && scene.pair_count() >= 2) {
            check_grid(rep, scene, s, k, options, est_opts, false);
            if (usable(scene, reference)) check_grid(rep, scene, reference, k, options, est_opts, true);
        }
    }
    return rep;
}

void print_oracle_report(std::ostream& out, const OracleReport& r, const Scene& scene, const OracleOptions& o) {
    out << "samples: " << r.samples << '\n'
        << "alpha_resolution: "
        << (o.angle_resolution == AngleResolution::law_of_cosines ? "law_of_cosines" : "law_of_sines") << '\n'
        << "max_brr_fd_error_mps: " << r.max_brr_fd_error_mps << " (threshold " << o.thresholds.brr_fd_mps << ")\n"
        << "max_position_round_trip_m: " << r.max_position_error_m << " (threshold " << o.thresholds.position_m
        << ")\n"
        << "max_velocity_round_trip_mps: " << r.max_velocity_error_mps << " (threshold " << o.thresholds.velocity_mps
        << ")\n"
        << "max_heading_round_trip_rad: " << r.max_heading_error_rad << " (threshold " << o.thresholds.heading_rad
        << ")\n"
        << "max_ls_objective_excess_mps: " << r.max_ls_objective_excess_mps << '\n'
        << "ls_vs_grid_instances: " << r.grid_checked << '\n'
        << "max_ls_vs_grid_cells: " << r.max_grid_cells << " (threshold " << o.thresholds.grid_cells << ")\n"
        << "failures: " << r.failures.size() << '\n';
    if (r.failures.empty()) return;
    out << "txs:";
    for (const auto& tx : scene.txs()) out << " (" << tx.range_m << " m, " << rad_to_deg(tx.angle_rad) << " deg)";
    out << '\n';
    const std::size_t shown = std::min<std::size_t>(r.failures.size(), 20);
    auto old_precision = out.precision(17);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& f = r.failures[i];
        out << "FAIL " << f.check << " sample=" << f.sample << " pair=" << f.pair + 1 << " value=" << f.value
            << " threshold=" << f.threshold << " target_range_m=" << f.state.position.range_m
            << " target_angle_deg=" << rad_to_deg(f.state.position.angle_rad)
            << " speed_mps=" << f.state.velocity.speed_mps
            << " heading_deg=" << rad_to_deg(f.state.velocity.heading_rad) << '\n';
    }
    out.precision(old_precision);
    if (r.failures.size() > shown) out << "... " << r.failures.size() - shown << " more\n";
}

}  // namespace msloc
