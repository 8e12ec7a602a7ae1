#pragma once

#include <cstdint>

namespace wkm {

/**
 * SplitMix64 generator (Steele, Lea and Flood, 2014).
 *
 * Tiny state, full 2^64 period and a published reference sequence, which
 * makes runs reproducible across platforms and standard libraries. Seed
 * 1234567 yields 6457827717110365317, 3203168211198807973, ...
 */
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    std::uint64_t operator()() noexcept { return next(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

private:
    std::uint64_t state_;
};

/// Finalizer of SplitMix64, usable as a stateless 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of the index-th independent substream of `seed`.
/// stream_seed(s, i) = mix64(s ^ mix64(i + 1)); index 0 does not return s.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace wkm
