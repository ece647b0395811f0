#include "oim/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oim/bounds.hpp"

namespace oim {

std::pair<double, double> mean_counts(double alpha_sq, double beta_mag,
                                      const ImperfectionModel& imp) {
    if (!(beta_mag >= 0.0))
        throw std::invalid_argument("beta_mag must be >= 0");
    const double cross = 2.0 * imp.xi * beta_mag * std::sqrt(alpha_sq);
    const double base = alpha_sq + beta_mag * beta_mag;
    return {imp.eta * (base + cross) + imp.nu, imp.eta * (base - cross) + imp.nu};
}

double helstrom_at_switch(double alpha_sq, double p, double t1) {
    if (!(t1 > 0.0 && t1 <= 1.0))
        throw std::invalid_argument("t1 must lie in (0, 1]");
    return helstrom_error(t1 * alpha_sq, p);
}

namespace {

void check_simplex(const ProbabilityTriple& s, std::size_t bin) {
    if (!s.in_simplex(1e-9))
        throw std::runtime_error(
            "probability simplex violated at bin " + std::to_string(bin) +
            " (time discretization too coarse for this waveform)");
}

} // namespace

ProbabilityTrace evolve(const StrategySpec& spec, const WaveformTable& wf,
                        const ImperfectionModel& imp) {
    spec.validate();
    imp.validate();
    if (wf.n_bins() != static_cast<std::size_t>(imp.n_bins))
        throw std::invalid_argument("waveform table does not match imp.n_bins");

    const std::size_t n = wf.n_bins();
    const double dt = wf.dt;
    const double sqrt_a = std::sqrt(spec.alpha_sq);

    ProbabilityTrace trace;
    trace.times.resize(n + 1);
    trace.triples.resize(n + 1);
    trace.t1_index = wf.t1_index();

    ProbabilityTriple s{spec.p, 1.0 - spec.p, 0.0};
    trace.times[0] = 0.0;
    trace.triples[0] = s;

    // Total correct-hypothesis mass at the switch; seeds the second mode.
    double correct_mass = spec.p;
    bool switched = false;

    for (std::size_t k = 0; k < n; ++k) {
        const WaveformBin& bin = wf.bins[k];
        const double beta = bin.mag_applied;
        const double cross = 2.0 * imp.xi * beta * sqrt_a;
        const double base = spec.alpha_sq + beta * beta;
        const double n_plus = std::fmax(imp.eta * (base + cross) + imp.nu, 0.0);
        const double n_minus = std::fmax(imp.eta * (base - cross) + imp.nu, 0.0);

        if (bin.mode == Mode::first) {
            const double pc = s.p_c;
            s.p_c = pc * (1.0 - dt * n_minus) + (1.0 - pc) * dt * n_plus;
            s.p_e = 1.0 - s.p_c;
            s.p_i = 0.0;
            correct_mass = s.p_c;
        } else {
            if (!switched) {
                switched = true;
                correct_mass = s.p_c;
                if (spec.v <= 0.5) {
                    s = {0.0, 0.0, 1.0};
                }
                if (k > 0) trace.triples[k] = s;
            }
            const double pc = s.p_c;
            const double pe = s.p_e;
            s.p_c = pc * (1.0 - dt * n_minus) + (correct_mass - pc) * dt * n_plus;
            s.p_e = pe * (1.0 - dt * n_plus) + ((1.0 - correct_mass) - pe) * dt * n_minus;
            s.p_i = 1.0 - s.p_c - s.p_e;
        }

        check_simplex(s, k);
        trace.times[k + 1] = (k + 1) * dt;
        trace.triples[k + 1] = s;
    }

    trace.p_prime = 1.0 - correct_mass;
    return trace;
}

} // namespace oim
