#include "oim/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oim {

std::size_t WaveformTable::t1_index() const {
    for (std::size_t k = 0; k < bins.size(); ++k)
        if (bins[k].mode == Mode::second) return k;
    return bins.size();
}

double dolinar_magnitude(double t, double alpha_sq, double p) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("t must lie in [0, 1]");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");
    const double denom_sq = 1.0 - 4.0 * p * (1.0 - p) * std::exp(-4.0 * alpha_sq * t);
    if (denom_sq <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(alpha_sq / denom_sq);
}

double single_state_magnitude(double t, double alpha_sq, double v, double t1) {
    if (!(t > t1))
        throw std::invalid_argument("t must exceed t1");
    if (!(t <= 1.0))
        throw std::invalid_argument("t must lie in [0, 1]");
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument("v must lie in (0, 1)");
    const double denom_sq =
        1.0 - 4.0 * v * (1.0 - v) * std::exp(-4.0 * alpha_sq * (t - t1));
    if (denom_sq <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(alpha_sq / denom_sq);
}

double quantize_magnitude(double x, double cap, int bits) {
    if (bits <= 0 || !std::isfinite(cap)) return x;
    if (cap <= 0.0) return 0.0;
    const int levels = 1 << bits;
    const double delta = cap / levels;
    int k = static_cast<int>(std::floor(x / delta));
    k = std::clamp(k, 0, levels - 1);
    return (static_cast<double>(k) + 0.5) * delta;
}

WaveformTable build_waveform(const StrategySpec& spec, const ImperfectionModel& imp) {
    spec.validate();
    imp.validate();

    WaveformTable table;
    const int n = imp.n_bins;
    table.dt = 1.0 / n;
    table.t1 = spec.t1;
    table.bins.resize(static_cast<std::size_t>(n));

    const double cap = std::isfinite(imp.r_max)
                           ? std::sqrt(imp.r_max * spec.alpha_sq)
                           : std::numeric_limits<double>::infinity();

    for (int k = 0; k < n; ++k) {
        WaveformBin& bin = table.bins[static_cast<std::size_t>(k)];
        bin.t_mid = (k + 0.5) * table.dt;
        if (bin.t_mid <= spec.t1) {
            bin.mode = Mode::first;
            bin.mag_ideal = dolinar_magnitude(bin.t_mid, spec.alpha_sq, spec.p);
        } else {
            bin.mode = Mode::second;
            bin.mag_ideal =
                single_state_magnitude(bin.t_mid, spec.alpha_sq, spec.v, spec.t1);
        }
        const double clamped = std::min(bin.mag_ideal, cap);
        bin.mag_applied = quantize_magnitude(clamped, cap, imp.dac_bits);
    }
    return table;
}

} // namespace oim
