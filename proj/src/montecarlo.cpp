#include "msloc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "msloc/errors.hpp"
#include "msloc/random.hpp"

namespace msloc {

namespace {

// est^2 - 2 est true cos(d) + true^2 in a cancellation-free form.
double squared_polar_error(double est_r, double est_a, double true_r, double true_a) {
    const double half_sin = std::sin(0.5 * (est_a - true_a));
    const double diff = est_r - true_r;
    return diff * diff + 4.0 * est_r * true_r * half_sin * half_sin;
}

struct TrialOutcome {
    bool ok = false;
    double pos_sq = 0.0;
    double vel_sq = 0.0;
};

TrialOutcome run_one(const TrialSpec& spec, std::span<const PairTruth> truth, std::size_t trial) {
    const auto meas =
        generate_trial_measurements(truth, spec.target.position.angle_rad, spec.noise, spec.master_seed, trial);
    TrialOutcome out;
    try {
        const auto est = estimate(spec.scene, meas, spec.estimator);
        const auto& p = est.position_part.position;
        out.pos_sq = squared_polar_error(p.range_m, p.angle_rad, spec.target.position.range_m,
                                         spec.target.position.angle_rad);
        if (est.velocity_part) {
            const auto& v = est.velocity_part->velocity;
            out.vel_sq = squared_polar_error(v.speed_mps, v.heading_rad, spec.target.velocity.speed_mps,
                                             spec.target.velocity.heading_rad);
        }
        out.ok = true;
    } catch (const Error&) {
        out.ok = false;
    }
    return out;
}

}  // namespace

std::string_view to_string(SweepChannel c) {
    switch (c) {
        case SweepChannel::br: return "br";
        case SweepChannel::brr: return "brr";
        case SweepChannel::doa: return "doa";
    }
    return "?";
}

std::optional<SweepChannel> parse_sweep_channel(std::string_view s) {
    if (s == "br") return SweepChannel::br;
    if (s == "brr") return SweepChannel::brr;
    if (s == "doa") return SweepChannel::doa;
    return std::nullopt;
}

void SweepSpec::validate() const {
    if (values.empty()) throw ValidationError("sweep.values", "must not be empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string field = "sweep.values[" + std::to_string(i) + "]";
        if (!std::isfinite(values[i]) || values[i] < 0.0) throw ValidationError(field, "must be finite and >= 0");
        if (i > 0 && !(values[i] > values[i - 1])) throw ValidationError(field, "values must be strictly increasing");
    }
    if (base.trials < 1) throw ValidationError("trials", "must be >= 1");
}

NoiseSpec with_sigma(NoiseSpec base, SweepChannel channel, double sigma) {
    switch (channel) {
        case SweepChannel::br: base.sigma_br_m = sigma; break;
        case SweepChannel::brr: base.sigma_brr_mps = sigma; break;
        case SweepChannel::doa: base.sigma_doa_deg = sigma; break;
    }
    return base;
}

double rmse_position(std::span<const PolarPoint> estimates, const PolarPoint& truth) {
    if (estimates.empty()) throw EmptyInput("no position estimates");
    double sum = 0.0;
    for (const auto& e : estimates) sum += squared_polar_error(e.range_m, e.angle_rad, truth.range_m, truth.angle_rad);
    return std::sqrt(sum / static_cast<double>(estimates.size()));
}

double rmse_velocity(std::span<const PolarVelocity> estimates, const PolarVelocity& truth) {
    if (estimates.empty()) throw EmptyInput("no velocity estimates");
    double sum = 0.0;
    for (const auto& e : estimates)
        sum += squared_polar_error(e.speed_mps, e.heading_rad, truth.speed_mps, truth.heading_rad);
    return std::sqrt(sum / static_cast<double>(estimates.size()));
}

RmseReport run_trials(const TrialSpec& spec, const RunOptions& run) {
    if (spec.trials < 1) throw ValidationError("trials", "must be >= 1");
    spec.noise.validate();
    const auto truth = ground_truth(spec.scene, spec.target, spec.estimator.angle_resolution);

    std::vector<TrialOutcome> outcomes(spec.trials);
    unsigned threads = run.threads != 0 ? run.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.trials));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) outcomes[m] = run_one(spec, truth, m);
    };
    if (threads <= 1) {
        work(0, spec.trials);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (spec.trials + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(spec.trials, t * chunk);
            const std::size_t end = std::min(spec.trials, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }

    // Reduce in trial order so the sums do not depend on scheduling.
    RmseReport report;
    double pos_sum = 0.0;
    double vel_sum = 0.0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++report.trials_failed;
            continue;
        }
        ++report.trials_succeeded;
        pos_sum += o.pos_sq;
        vel_sum += o.vel_sq;
    }
    const auto n = static_cast<double>(report.trials_succeeded);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.rmse_position_m = report.trials_succeeded ? std::sqrt(pos_sum / n) : nan;
    if (spec.scene.pair_count() >= 2) report.rmse_velocity_mps = report.trials_succeeded ? std::sqrt(vel_sum / n) : nan;
    return report;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, const RunOptions& run) {
    spec.validate();
    std::vector<SweepPoint> out;
    out.reserve(spec.values.size());
    for (std::size_t k = 0; k < spec.values.size(); ++k) {
        TrialSpec point = spec.base;
        point.noise = with_sigma(spec.base.noise, spec.swept_channel, spec.values[k]);
        point.master_seed = derive_point_seed(spec.base.master_seed, k);
        out.push_back({spec.values[k], point.noise, run_trials(point, run)});
    }
    return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (n == 0 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_spaced needs n >= 1 and 0 < lo <= hi");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace msloc
