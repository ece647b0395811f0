#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace oim {

// One point of the (conclusive-correct, conclusive-error, inconclusive)
// probability simplex.
struct ProbabilityTriple {
    double p_c = 0.0;
    double p_e = 0.0;
    double p_i = 0.0;

    double sum() const { return p_c + p_e + p_i; }

    bool in_simplex(double tol = 1e-9) const {
        return p_c >= -tol && p_e >= -tol && p_i >= -tol &&
               std::abs(sum() - 1.0) <= tol;
    }
};

// Feedback strategy: displace-and-count with a Dolinar-type waveform on
// [0, t1) and a single-state nulling waveform on [t1, 1], switching the
// displacement sign hypothesis on each detection.
struct StrategySpec {
    double alpha_sq = 0.0;  // mean photon number |alpha|^2 of the input pulse
    double p = 0.5;         // prior of the more likely ("+") hypothesis
    double target_pi = 0.0; // requested inconclusive probability
    double t1 = 1.0;        // switch time, fraction of the pulse
    double v = 0.5;         // nulling weight of the second stage
    int n0 = 1;             // photon-count offset applied at the switch

    void validate() const {
        if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
            throw std::invalid_argument("alpha_sq must be finite and >= 0");
        if (!(p >= 0.5 && p < 1.0))
            throw std::invalid_argument("p must lie in [0.5, 1)");
        if (!(target_pi >= 0.0 && target_pi < 1.0))
            throw std::invalid_argument("target_pi must lie in [0, 1)");
        if (!(t1 >= 0.0 && t1 <= 1.0))
            throw std::invalid_argument("t1 must lie in [0, 1]");
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("v must lie in (0, 1)");
        if (n0 != 0 && n0 != 1)
            throw std::invalid_argument("n0 must be 0 or 1");
    }
};

// Detector and modulation imperfections. Defaults are the ideal device.
struct ImperfectionModel {
    double eta = 1.0;   // detection efficiency
    double xi = 1.0;    // interference visibility
    double nu = 0.0;    // dark counts per pulse
    double r_max = std::numeric_limits<double>::infinity(); // |u|^2 <= r_max*|alpha|^2
    int dac_bits = 0;   // 0 disables waveform quantization
    int n_bins = 1024;  // time discretization of the pulse

    static ImperfectionModel ideal(int n_bins = 1024) {
        ImperfectionModel m;
        m.n_bins = n_bins;
        return m;
    }

    bool is_ideal() const {
        return eta == 1.0 && xi == 1.0 && nu == 0.0 &&
               std::isinf(r_max) && dac_bits == 0;
    }

    void validate() const {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("eta must lie in [0, 1]");
        if (!(xi >= 0.0 && xi <= 1.0))
            throw std::invalid_argument("xi must lie in [0, 1]");
        if (!(nu >= 0.0) || !std::isfinite(nu))
            throw std::invalid_argument("nu must be finite and >= 0");
        if (!(r_max > 0.0))
            throw std::invalid_argument("r_max must be > 0");
        if (dac_bits < 0 || dac_bits > 24)
            throw std::invalid_argument("dac_bits must lie in [0, 24]");
        if (dac_bits > 0 && std::isinf(r_max))
            throw std::invalid_argument("dac_bits requires a finite r_max");
        if (n_bins < 2 || n_bins > (1 << 20))
            throw std::invalid_argument("n_bins must lie in [2, 2^20]");
    }
};

} // namespace oim
