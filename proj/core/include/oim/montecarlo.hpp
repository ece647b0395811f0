#pragma once

#include <cstdint>
#include <vector>

#include "oim/rng.hpp"
#include "oim/types.hpp"
#include "oim/waveform.hpp"

namespace oim {

enum class Outcome { correct, error, inconclusive };

struct TrialRecord {
    int true_state = 1;                  // +1 or -1
    std::vector<std::uint8_t> detections; // one flag per bin
    std::vector<std::int8_t> hypothesis;  // provisional guess after each bin; 0 = inconclusive
    Outcome outcome = Outcome::inconclusive;
    int n1_final = 0;                    // detections in the first mode
    int n2_final = 0;                    // detections in the second mode
};

struct EnsembleStats {
    std::uint64_t n_trials = 0;
    std::uint64_t n_correct = 0;
    std::uint64_t n_error = 0;
    std::uint64_t n_inconclusive = 0;
    double p_c = 0.0, p_e = 0.0, p_i = 0.0;
    double se_c = 0.0, se_e = 0.0, se_i = 0.0; // binomial standard errors
    double batch_sd_c = 0.0, batch_sd_e = 0.0, batch_sd_i = 0.0;
    std::vector<ProbabilityTriple> time_resolved; // one per bin boundary
    std::uint64_t master_seed = 0;
    int n_batches = 1;
};

// Poisson draw with the given mean, clamped to the on/off detector range.
int sample_detection(double mean_counts, TrialRng& rng);

TrialRecord simulate_trial(const StrategySpec& spec, const WaveformTable& wf,
                           const ImperfectionModel& imp, TrialRng& rng);

// Runs n_trials independent trials with per-trial streams derived from
// (master_seed, trial index). Results are bit-identical for any n_threads.
EnsembleStats run_ensemble(const StrategySpec& spec, const WaveformTable& wf,
                           const ImperfectionModel& imp, std::uint64_t n_trials,
                           std::uint64_t master_seed, int n_batches = 1,
                           int n_threads = 1);

} // namespace oim
