#pragma once

#include <cstddef>
#include <vector>

#include "oim/types.hpp"

namespace oim {

enum class Mode { first, second };

struct WaveformBin {
    double t_mid = 0.0;       // bin-center time in [0, 1]
    double mag_ideal = 0.0;   // unclamped displacement magnitude
    double mag_applied = 0.0; // after clamp and DAC quantization
    Mode mode = Mode::first;
};

struct WaveformTable {
    std::vector<WaveformBin> bins;
    double t1 = 1.0;
    double dt = 0.0;

    std::size_t n_bins() const { return bins.size(); }

    // Index of the first second-mode bin; n_bins() if the second mode is
    // never reached.
    std::size_t t1_index() const;
};

// Displacement magnitude of the minimum-error (Dolinar) mode,
// sqrt(alpha_sq) / sqrt(1 - 4 p (1-p) e^(-4 alpha_sq t)).
// Divergent at t=0 for p=0.5; callers evaluate at bin centers.
double dolinar_magnitude(double t, double alpha_sq, double p);

// Displacement magnitude of the single-state mode on (t1, 1], same form
// with weight v and time argument t - t1.
double single_state_magnitude(double t, double alpha_sq, double v, double t1);

// Uniform mid-rise quantizer over [0, cap] with 2^bits levels.
// bits = 0 or cap = +inf returns x unchanged.
double quantize_magnitude(double x, double cap, int bits);

WaveformTable build_waveform(const StrategySpec& spec, const ImperfectionModel& imp);

} // namespace oim
