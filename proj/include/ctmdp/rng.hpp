#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace ctmdp {

/// SplitMix64 finalizer; used to derive independent stream seeds from a
/// master seed and a trajectory counter.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with hand-rolled double samplers. The samplers avoid
/// std::*_distribution so that identical seeds give identical trajectories
/// on any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // seed the four words through SplitMix64
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ULL;
            word = mix64(s);
        }
    }

    /// Stream `k` of a master seed: counter-based derivation, so trajectory
    /// k's sampler does not depend on how many draws earlier streams made.
    static Rng for_stream(std::uint64_t master_seed, std::uint64_t k) {
        return Rng(mix64(mix64(master_seed) + (k + 1) * 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on (0,1]; never 0, so log(u) is safe.
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Exponential with the given rate; rate 0 yields +infinity (no event).
    /// Strictly positive, so jump epochs stay strictly increasing.
    double exponential(double rate) {
        if (rate < 0.0) throw std::domain_error("exponential: negative rate");
        if (rate == 0.0) return std::numeric_limits<double>::infinity();
        double draw;
        do {
            draw = -std::log(uniform()) / rate;
        } while (draw <= 0.0);
        return draw;
    }

    double normal(double mean, double stddev) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

    /// Index drawn proportionally to nonnegative weights.
    int categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) throw std::domain_error("categorical: nonpositive total weight");
        double u = uniform() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            u -= weights[i];
            if (u <= 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ctmdp
