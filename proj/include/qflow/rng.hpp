#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qflow {

// Deterministic seeded generator. mt19937_64 with splitmix64 seed
// scrambling; per-trial streams come from derived(seed, trial_index) so
// results do not depend on how trials are scheduled.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(scramble(seed)) {}

    static Rng derived(std::uint64_t seed, std::uint64_t stream) {
        return Rng(scramble(seed) ^ scramble(stream + 0x9e3779b97f4a7c15ULL));
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; avoids libc distribution variance.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        while (u == 0.0) {
            u = uniform();
        }
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t next_u64() { return gen_(); }

  private:
    static std::uint64_t scramble(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qflow
