#pragma once

#include <cstdint>
#include <random>

namespace qrs {

// SplitMix64 step; used for seed derivation so that child streams are
// statistically independent of each other and of the parent.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64_next(s);
    s ^= stream * 0xda942042e4dd58b5ULL;
    return a ^ splitmix64_next(s);
}

// Seedable, splittable generator. mt19937_64 output is fixed by the standard,
// and u01/bounded below avoid std::*_distribution, so every draw is
// bit-reproducible across platforms and compilers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, 1) with 53-bit resolution
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return u01() < p; }

    // uniform integer in [0, n), rejection sampled
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace qrs
