#include "msloc/measurement.hpp"

#include <cmath>

#include "msloc/angles.hpp"
#include "msloc/errors.hpp"

namespace msloc {

void NoiseSpec::validate() const {
    auto check = [](double v, const char* field) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
    };
    check(sigma_br_m, "noise.sigma_br_m");
    check(sigma_brr_mps, "noise.sigma_brr_mps");
    check(sigma_doa_deg, "noise.sigma_doa_deg");
}

MeasurementSet MeasurementSet::subset(const std::vector<std::size_t>& pairs) const {
    MeasurementSet out;
    out.noise = noise;
    for (auto p : pairs) {
        out.br_m.push_back(br_m.at(p));
        out.brr_mps.push_back(brr_mps.at(p));
        out.doa_rad.push_back(doa_rad.at(p));
    }
    return out;
}

MeasurementSet generate_measurements(std::span<const PairTruth> truth, double theta0_rad, const NoiseSpec& noise,
                                     RandomStream& br_stream, RandomStream& brr_stream, RandomStream& doa_stream) {
    if (truth.empty()) throw EmptyTruth("no TX-RX pairs to measure");
    noise.validate();
    const std::size_t n = truth.size();
    const double sigma_doa_rad = deg_to_rad(noise.sigma_doa_deg);

    MeasurementSet m;
    m.noise = noise;
    m.br_m.resize(n);
    m.brr_mps.resize(n);
    m.doa_rad.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.br_m[i] = truth[i].bistatic_range_m + noise.sigma_br_m * br_stream.next_gaussian();
    for (std::size_t i = 0; i < n; ++i)
        m.brr_mps[i] = truth[i].bistatic_range_rate_mps + noise.sigma_brr_mps * brr_stream.next_gaussian();
    for (std::size_t i = 0; i < n; ++i) m.doa_rad[i] = theta0_rad + sigma_doa_rad * doa_stream.next_gaussian();
    return m;
}

MeasurementSet generate_measurements(std::span<const PairTruth> truth, double theta0_rad, const NoiseSpec& noise,
                                     RandomStream& stream) {
    return generate_measurements(truth, theta0_rad, noise, stream, stream, stream);
}

MeasurementSet generate_trial_measurements(std::span<const PairTruth> truth, double theta0_rad,
                                           const NoiseSpec& noise, std::uint64_t master_seed, std::uint64_t trial) {
    auto br = derive_stream(master_seed, trial, NoiseChannel::br);
    auto brr = derive_stream(master_seed, trial, NoiseChannel::brr);
    auto doa = derive_stream(master_seed, trial, NoiseChannel::doa);
    return generate_measurements(truth, theta0_rad, noise, br, brr, doa);
}

}  // namespace msloc
