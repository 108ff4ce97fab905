#pragma once

#include <cstdint>
#include <optional>

namespace msloc {

/// Counter-based pseudo-random stream.
///
/// Output k is a SplitMix64 finalizer applied to key + (k + 1) * golden gamma,
/// so a stream is fully determined by its key and needs no shared state.
/// Gaussian draws use the Box-Muller transform on two 53-bit uniforms and
/// return the cosine branch first, then the cached sine branch. This sampling
/// scheme is part of the reproducibility contract; changing it changes every
/// golden output.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1].
    double next_uniform() noexcept;
    /// Standard normal.
    double next_gaussian() noexcept;

    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

enum class NoiseChannel : std::uint64_t { br = 0, brr = 1, doa = 2 };

/// Stream keyed by (master seed, trial, channel). Distinct keys give
/// independent streams; the result does not depend on call order.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t channel);
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t trial, NoiseChannel channel);

/// Seed for the index-th point of a sweep, so sweep points draw independent noise.
std::uint64_t derive_point_seed(std::uint64_t master_seed, std::uint64_t point_index);

}  // namespace msloc
