#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lptime {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seedable, splittable generator. The core is std::mt19937_64, whose output
/// sequence is fully specified by the standard, so a fixed seed reproduces
/// bit-identical draws on any conforming platform. Floating-point draws avoid
/// std::*_distribution, whose streams are implementation defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

    // Independent substream; stream ids need not be contiguous.
    Rng split(std::uint64_t stream) const {
        std::uint64_t s = seed_ ^ (0xb5ad4eceda1ce2a9ULL + stream);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n). Lemire reduction; bias < n / 2^64.
    std::size_t index(std::size_t n) {
        using u128 = unsigned __int128;
        return static_cast<std::size_t>((static_cast<u128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; second mate cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace lptime
