#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace catbond {

// SplitMix64 finalizer, used to derive well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream tags keep the loss, trigger and rate legs of a joint simulation
// on disjoint substreams, so the legs are independent and every path is
// reproducible from (seed, tag, index) alone regardless of worker count.
namespace stream {
inline constexpr std::uint64_t loss = 0x6c6f7373;
inline constexpr std::uint64_t trigger = 0x74726967;
inline constexpr std::uint64_t rate = 0x72617465;
inline constexpr std::uint64_t arrivals = 0x61727276;
inline constexpr std::uint64_t psi = 0x70736920;
inline constexpr std::uint64_t scenario = 0x7363656e;
}  // namespace stream

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index));
}

// Order-independent summation: the result depends only on the contents of
// xs, so parallel fills aggregate identically for any thread count.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct Estimate {
    double value = 0.0;
    double se = 0.0;
};

inline Estimate mean_and_se(std::span<const double> xs) {
    Estimate e;
    const double n = static_cast<double>(xs.size());
    if (xs.empty()) return e;
    e.value = pairwise_sum(xs) / n;
    if (xs.size() < 2) return e;
    double ss = 0.0;
    for (double x : xs) ss += (x - e.value) * (x - e.value);
    e.se = std::sqrt(ss / (n * (n - 1.0)));
    return e;
}

}  // namespace catbond
