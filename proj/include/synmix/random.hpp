#ifndef SYNMIX_RANDOM_HPP
#define SYNMIX_RANDOM_HPP

// Portable random streams. Every draw here is specified down to the bit so
// that selections and simulated records can be reproduced from any language:
//
//   splitmix64     Vigna's reference generator (state += golden; mix).
//   bounded(n)     floor(next() * n / 2^64), no rejection.
//   normal()       Box-Muller, cosine branch, u1 = (next()>>11 + 1) / 2^53,
//                  u2 = (next()>>11) / 2^53.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>

namespace synmix {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output function applied to a single word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }
    constexpr std::uint64_t operator()() noexcept { return next(); }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) noexcept {
        const uint128 wide = static_cast<uint128>(next()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate; consumes exactly two outputs.
    double normal() noexcept {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Folds a list of stream coordinates into one seed:
/// s = seed; for each c: s = mix64(s ^ c) + golden.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> coords) noexcept {
    std::uint64_t s = seed;
    for (const std::uint64_t c : coords) {
        s = mix64(s ^ c) + kGoldenGamma;
    }
    return s;
}

/// Partial Fisher-Yates: after the call, items[0..count) hold a uniform
/// draw without replacement. For k = 0 .. min(count, n-1) - 1, step k swaps
/// items[k] with items[k + bounded(n - k)]; the last slot never draws.
template <typename T>
void partial_shuffle(std::span<T> items, std::size_t count, SplitMix64& rng) {
    const std::size_t n = items.size();
    for (std::size_t k = 0; k < count && k + 1 < n; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.bounded(n - k));
        using std::swap;
        swap(items[k], items[j]);
    }
}

}  // namespace synmix

#endif  // SYNMIX_RANDOM_HPP
