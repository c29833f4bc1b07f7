// rng.hpp — seedable, splittable deterministic random streams
//
// Every sampled operation consumes a stream derived from (seed, label), so
// runs are reproducible and independent streams can be drawn concurrently
// without shared state. The uniform/normal transforms are coded explicitly;
// outputs depend only on (seed, label) and the floating-point environment.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qswap {

// splitmix64 step (Steele/Lea/Flood), used to expand seeds into stream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream seed for (seed, label); distinct labels give decorrelated streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64_next(s);
    s = a ^ (label * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64_next(s);
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view label) {
    return derive_stream(seed, fnv1a64(label));
}

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t stream_seed) : gen_(stream_seed) {}
    RandomStream(std::uint64_t seed, std::uint64_t label) : gen_(derive_stream(seed, label)) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform on [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal (Box-Muller; pairs are cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Number of successes in n Bernoulli(p) trials.
    long long bernoulli_count(double p, long long n) {
        long long k = 0;
        for (long long i = 0; i < n; ++i) {
            if (uniform() < p) ++k;
        }
        return k;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qswap
