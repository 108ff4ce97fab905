#include "msloc/random.hpp"

#include <cmath>

#include "msloc/angles.hpp"

namespace msloc {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double RandomStream::next_uniform() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::next_gaussian() noexcept {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    return r * std::cos(kTwoPi * u2);
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t channel) {
    // Chain the mixer so each coordinate passes through a full avalanche.
    std::uint64_t k = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
    k = mix64(k ^ (trial * kGamma + 0x3C6EF372FE94F82BULL));
    k = mix64(k ^ (channel * 0xD1B54A32D192ED03ULL + 0xA54FF53A5F1D36F1ULL));
    return RandomStream(k);
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial, NoiseChannel channel) {
    return derive_stream(master_seed, trial, static_cast<std::uint64_t>(channel));
}

std::uint64_t derive_point_seed(std::uint64_t master_seed, std::uint64_t point_index) {
    return mix64(mix64(master_seed + 0x510E527FADE682D1ULL) ^ (point_index * kGamma));
}

}  // namespace msloc
