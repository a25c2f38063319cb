#pragma once

#include <cstdint>
#include <cmath>

// Counter-based random streams built on the SplitMix64 mixer
// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators";
// the same finalizer used by Java's SplittableRandom).
//
// Every draw is a pure function of a 64-bit stream key, so results do not
// depend on call order or worker count. Keys are derived by folding integer
// fields (seed, trial, component, ...) through the mixer.

namespace srq {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Key derivation: h' = mix64(h + golden + field). Injective enough for
// experiment-scale field ranges; documented so other tools can reproduce it.
constexpr std::uint64_t fold_key(std::uint64_t h, std::uint64_t field) {
    return mix64(h + kGolden + field);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += kGolden);
        return mix64(z);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Standard normal via Box-Muller, two draws from the keyed stream.
inline double gaussian_from_key(std::uint64_t key) {
    SplitMix64 g(key);
    const double u1 = g.next_unit_open();
    const double u2 = g.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace srq
