#pragma once

#include <cstdint>
#include <vector>

namespace vulnlex {

// Counter-based generator (splitmix64). The full algorithm is defined here
// so any reimplementation reproduces identical streams from the same seed.
//
//   state_i = base + (i + 1) * 0x9E3779B97F4A7C15
//   out_i   = mix(state_i)  with mix(z):
//               z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//               z ^= z >> 27; z *= 0x94D049BB133111EB
//               z ^= z >> 31
//
// base = mix(seed ^ mix(stream)) so distinct stream ids give unrelated streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Uniform integer in [0, bound), bound >= 1. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound);

    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; second value cached.
    double normal();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace vulnlex
