#include "oim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace oim {

int sample_detection(double mean_counts, TrialRng& rng) {
    if (!(mean_counts >= 0.0))
        throw std::invalid_argument("mean_counts must be >= 0");
    const double u = rng.next_double();
    double p = std::exp(-mean_counts);
    if (p == 0.0) return 1;
    double cum = p;
    int k = 0;
    while (u >= cum && k < 500) {
        ++k;
        p *= mean_counts / k;
        cum += p;
    }
    return k >= 1 ? 1 : 0;
}

namespace {

// Per-bin zero-count probabilities for the two possible interference signs.
// The on/off detector only distinguishes zero from nonzero counts, so the
// Poisson draw reduces to a threshold on P(0).
struct DetectionTable {
    std::vector<double> p0_null; // displacement sign matches the true state
    std::vector<double> p0_anti;
    std::size_t switch_bin = 0;  // first second-mode bin
    double p = 0.5;
    int n0 = 1;

    DetectionTable(const StrategySpec& spec, const WaveformTable& wf,
                   const ImperfectionModel& imp) {
        spec.validate();
        imp.validate();
        if (wf.n_bins() != static_cast<std::size_t>(imp.n_bins))
            throw std::invalid_argument("waveform table does not match imp.n_bins");
        const std::size_t n = wf.n_bins();
        const double dt = wf.dt;
        const double sqrt_a = std::sqrt(spec.alpha_sq);
        p0_null.resize(n);
        p0_anti.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double b = wf.bins[k].mag_applied;
            const double base = spec.alpha_sq + b * b;
            const double cross = 2.0 * imp.xi * b * sqrt_a;
            const double n_minus = std::fmax(imp.eta * (base - cross) + imp.nu, 0.0);
            const double n_plus = std::fmax(imp.eta * (base + cross) + imp.nu, 0.0);
            p0_null[k] = std::exp(-n_minus * dt);
            p0_anti[k] = std::exp(-n_plus * dt);
        }
        switch_bin = wf.t1_index();
        p = spec.p;
        n0 = spec.n0;
    }

    std::size_t n_bins() const { return p0_null.size(); }
};

// Integer tallies; merging is order-independent, which keeps ensembles
// deterministic for any thread partition.
struct Accumulator {
    std::uint64_t n_correct = 0, n_error = 0, n_inconclusive = 0;
    std::vector<std::uint64_t> boundary_correct, boundary_inconclusive;
    std::vector<std::uint64_t> batch_correct, batch_error, batch_inconclusive;

    Accumulator(std::size_t n_boundaries, std::size_t n_batches)
        : boundary_correct(n_boundaries, 0), boundary_inconclusive(n_boundaries, 0),
          batch_correct(n_batches, 0), batch_error(n_batches, 0),
          batch_inconclusive(n_batches, 0) {}

    void merge(const Accumulator& o) {
        n_correct += o.n_correct;
        n_error += o.n_error;
        n_inconclusive += o.n_inconclusive;
        for (std::size_t i = 0; i < boundary_correct.size(); ++i) {
            boundary_correct[i] += o.boundary_correct[i];
            boundary_inconclusive[i] += o.boundary_inconclusive[i];
        }
        for (std::size_t i = 0; i < batch_correct.size(); ++i) {
            batch_correct[i] += o.batch_correct[i];
            batch_error[i] += o.batch_error[i];
            batch_inconclusive[i] += o.batch_inconclusive[i];
        }
    }
};

struct TrialOutcome {
    int true_state;
    int final_hypothesis;
};

// One trial over the detection table. Record pointers are optional; the
// boundary tallies follow the same switch-boundary convention as the
// deterministic trace (the switch jump lands on boundary switch_bin).
TrialOutcome run_trial(const DetectionTable& tab, TrialRng& rng,
                       Accumulator* acc, TrialRecord* rec) {
    const std::size_t n = tab.n_bins();
    const int s = rng.next_double() < tab.p ? 1 : -1;

    int h = 1;          // provisional hypothesis
    int parity = 0;     // detection-count parity
    int s_hat1 = 1;     // hypothesis carried out of the first mode
    int n1 = 0, n2 = 0;
    bool switched = false;

    auto score = [&](std::size_t boundary) {
        if (!acc) return;
        if (h == s)
            ++acc->boundary_correct[boundary];
        else if (h == 0)
            ++acc->boundary_inconclusive[boundary];
    };

    for (std::size_t k = 0; k < n; ++k) {
        if (!switched && k >= tab.switch_bin) {
            switched = true;
            s_hat1 = h;
            parity = tab.n0 & 1;
            h = parity == 0 ? s_hat1 : 0;
        }
        score(k);

        const int beta_sign = switched ? (parity == 0 ? s_hat1 : -s_hat1)
                                       : (parity == 0 ? 1 : -1);
        const double p0 = beta_sign == s ? tab.p0_null[k] : tab.p0_anti[k];
        const int d = rng.next_double() >= p0 ? 1 : 0;
        if (d) {
            parity ^= 1;
            if (switched) {
                ++n2;
                h = parity == 0 ? s_hat1 : 0;
            } else {
                ++n1;
                h = parity == 0 ? 1 : -1;
            }
        }
        if (rec) {
            rec->detections[k] = static_cast<std::uint8_t>(d);
            rec->hypothesis[k] = static_cast<std::int8_t>(h);
        }
    }
    score(n);

    if (rec) {
        rec->true_state = s;
        rec->n1_final = n1;
        rec->n2_final = n2;
        rec->outcome = h == s    ? Outcome::correct
                       : h == 0 ? Outcome::inconclusive
                                : Outcome::error;
    }
    return {s, h};
}

double batch_sd(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

} // namespace

TrialRecord simulate_trial(const StrategySpec& spec, const WaveformTable& wf,
                           const ImperfectionModel& imp, TrialRng& rng) {
    DetectionTable tab(spec, wf, imp);
    TrialRecord rec;
    rec.detections.resize(tab.n_bins());
    rec.hypothesis.resize(tab.n_bins());
    run_trial(tab, rng, nullptr, &rec);
    return rec;
}

EnsembleStats run_ensemble(const StrategySpec& spec, const WaveformTable& wf,
                           const ImperfectionModel& imp, std::uint64_t n_trials,
                           std::uint64_t master_seed, int n_batches,
                           int n_threads) {
    if (n_trials < 1)
        throw std::invalid_argument("n_trials must be >= 1");
    if (n_batches < 1 || static_cast<std::uint64_t>(n_batches) > n_trials)
        throw std::invalid_argument("n_batches must lie in [1, n_trials]");
    if (n_threads < 1 || n_threads > 256)
        throw std::invalid_argument("n_threads must lie in [1, 256]");

    const DetectionTable tab(spec, wf, imp);
    const std::size_t n_boundaries = tab.n_bins() + 1;
    const std::uint64_t per_batch = n_trials / static_cast<std::uint64_t>(n_batches);

    auto batch_of = [&](std::uint64_t trial) {
        const std::uint64_t b = per_batch == 0 ? 0 : trial / per_batch;
        return std::min<std::uint64_t>(b, static_cast<std::uint64_t>(n_batches) - 1);
    };

    auto worker = [&](std::uint64_t lo, std::uint64_t hi, Accumulator& acc) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            TrialRng rng = TrialRng::for_trial(master_seed, t);
            const TrialOutcome out = run_trial(tab, rng, &acc, nullptr);
            const std::uint64_t b = batch_of(t);
            if (out.final_hypothesis == out.true_state) {
                ++acc.n_correct;
                ++acc.batch_correct[b];
            } else if (out.final_hypothesis == 0) {
                ++acc.n_inconclusive;
                ++acc.batch_inconclusive[b];
            } else {
                ++acc.n_error;
                ++acc.batch_error[b];
            }
        }
    };

    Accumulator total(n_boundaries, static_cast<std::size_t>(n_batches));
    if (n_threads == 1) {
        worker(0, n_trials, total);
    } else {
        std::vector<Accumulator> parts(
            static_cast<std::size_t>(n_threads),
            Accumulator(n_boundaries, static_cast<std::size_t>(n_batches)));
        std::vector<std::thread> threads;
        const std::uint64_t chunk =
            (n_trials + static_cast<std::uint64_t>(n_threads) - 1) /
            static_cast<std::uint64_t>(n_threads);
        for (int i = 0; i < n_threads; ++i) {
            const std::uint64_t lo = std::min<std::uint64_t>(i * chunk, n_trials);
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, n_trials);
            threads.emplace_back(worker, lo, hi, std::ref(parts[static_cast<std::size_t>(i)]));
        }
        for (auto& th : threads) th.join();
        for (const auto& part : parts) total.merge(part);
    }

    EnsembleStats stats;
    stats.n_trials = n_trials;
    stats.n_correct = total.n_correct;
    stats.n_error = total.n_error;
    stats.n_inconclusive = total.n_inconclusive;
    stats.master_seed = master_seed;
    stats.n_batches = n_batches;

    const double n = static_cast<double>(n_trials);
    stats.p_c = static_cast<double>(total.n_correct) / n;
    stats.p_e = static_cast<double>(total.n_error) / n;
    stats.p_i = static_cast<double>(total.n_inconclusive) / n;
    auto se = [n](double ph) { return std::sqrt(ph * (1.0 - ph) / n); };
    stats.se_c = se(stats.p_c);
    stats.se_e = se(stats.p_e);
    stats.se_i = se(stats.p_i);

    std::vector<double> bc, be, bi;
    for (int b = 0; b < n_batches; ++b) {
        const std::uint64_t nb =
            total.batch_correct[b] + total.batch_error[b] + total.batch_inconclusive[b];
        if (nb == 0) continue;
        bc.push_back(static_cast<double>(total.batch_correct[b]) / static_cast<double>(nb));
        be.push_back(static_cast<double>(total.batch_error[b]) / static_cast<double>(nb));
        bi.push_back(static_cast<double>(total.batch_inconclusive[b]) / static_cast<double>(nb));
    }
    stats.batch_sd_c = batch_sd(bc);
    stats.batch_sd_e = batch_sd(be);
    stats.batch_sd_i = batch_sd(bi);

    stats.time_resolved.resize(n_boundaries);
    for (std::size_t i = 0; i < n_boundaries; ++i) {
        const double c = static_cast<double>(total.boundary_correct[i]) / n;
        const double inc = static_cast<double>(total.boundary_inconclusive[i]) / n;
        stats.time_resolved[i] = {c, 1.0 - c - inc, inc};
    }
    return stats;
}

} // namespace oim
