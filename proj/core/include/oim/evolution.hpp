#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "oim/types.hpp"
#include "oim/waveform.hpp"

namespace oim {

// Deterministic evolution of the outcome probabilities over one pulse.
// times holds the n_bins+1 bin boundaries; triples[k] is the state at
// times[k]. triples[t1_index] records the state just after the mode
// switch. p_prime is the switch-time error probability that seeded the
// second mode (1 - P_C at t1).
struct ProbabilityTrace {
    std::vector<double> times;
    std::vector<ProbabilityTriple> triples;
    std::size_t t1_index = 0;
    double p_prime = 0.0;

    const ProbabilityTriple& final() const { return triples.back(); }
};

// Mean photon numbers (n_plus, n_minus) of one pulse for constructive and
// destructive interference of the displacement with the signal.
std::pair<double, double> mean_counts(double alpha_sq, double beta_mag,
                                      const ImperfectionModel& imp);

// Helstrom error of the partial measurement up to t1.
double helstrom_at_switch(double alpha_sq, double p, double t1);

ProbabilityTrace evolve(const StrategySpec& spec, const WaveformTable& wf,
                        const ImperfectionModel& imp);

} // namespace oim
