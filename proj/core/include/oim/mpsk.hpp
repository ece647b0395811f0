#pragma once

#include <cstdint>
#include <vector>

namespace oim {

// Hybrid inconclusive measurement of M-PSK coherent states: sequential
// unambiguous state elimination, then the binary measurement on the two
// surviving states.
struct MpskConfig {
    int m = 3;              // alphabet size
    double alpha_sq = 0.0;  // total mean photon number
    double f = 2.0 / 3.0;   // energy fraction spent on elimination
    double target_pi2 = 0.0; // inconclusive budget of the binary stage

    void validate() const;
};

struct HybridResult {
    double p_i_stage1 = 0.0;
    double p_i_stage2 = 0.0;
    double p_i_total = 0.0;
    double p_e = 0.0;
    double conditional_error = 0.0; // p_e / (1 - p_i_total)
};

struct ScalingPoint {
    int m = 0;
    double log10_p_conc_max = 0.0; // log10(1 - P_I of the elimination stage)
};

// Probability of zero detections when nulling the test state against the
// true state over a slice carrying stage_energy mean photons.
double vacuum_likelihood(double theta_test, double theta_true, double stage_energy);

// Inconclusive probability of the elimination stage alone: total weight of
// detection histories that leave three or more candidate states.
double min_inconclusive_prob(int m, double alpha_sq, double f);

// Full two-stage measurement for the ternary alphabet.
HybridResult hybrid_tpsk(const MpskConfig& config, int n_bins = 1024);

// Conditional error of ideal heterodyne detection when the lowest-confidence
// outcomes are declared inconclusive up to target_pi.
double heterodyne_baseline(int m, double alpha_sq, double target_pi);

// Monte-Carlo estimate of the same quantity (cross-check of the grid
// integration).
double heterodyne_baseline_mc(int m, double alpha_sq, double target_pi,
                              std::uint64_t n_samples, std::uint64_t seed);

// Elimination-stage ceiling per alphabet size at fixed energy per bit,
// with f = (m-1)/m.
std::vector<ScalingPoint> scaling_study(const std::vector<int>& m_range,
                                        double alpha_sq_per_bit);

} // namespace oim
