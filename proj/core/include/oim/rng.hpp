#pragma once

#include <cstdint>

namespace oim {

// splitmix64 stream. Trials get disjoint 2^21-draw windows of the master
// sequence, so ensembles are reproducible independent of scheduling.
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t state) : state_(state) {}

    static TrialRng for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return TrialRng(master_seed + kGamma * (trial_index << 21));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    std::uint64_t state_;
};

} // namespace oim
