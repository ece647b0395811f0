#include "oim/mpsk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "oim/rng.hpp"
#include "oim/solver.hpp"

namespace oim {

void MpskConfig::validate() const {
    if (m < 3 || m > 20)
        throw std::invalid_argument("m must lie in [3, 20]");
    if (!(alpha_sq > 0.0) || !std::isfinite(alpha_sq))
        throw std::invalid_argument("alpha_sq must be finite and > 0");
    if (!(f > 0.0 && f <= 1.0))
        throw std::invalid_argument("f must lie in (0, 1]");
    if (!(target_pi2 >= 0.0 && target_pi2 < 1.0))
        throw std::invalid_argument("target_pi2 must lie in [0, 1)");
}

double vacuum_likelihood(double theta_test, double theta_true, double stage_energy) {
    if (!(stage_energy >= 0.0))
        throw std::invalid_argument("stage_energy must be >= 0");
    return std::exp(-2.0 * stage_energy * (1.0 - std::cos(theta_true - theta_test)));
}

namespace {

struct History {
    int n_tests = 0;
    int survivor_a = 0;
    int survivor_b = 0;
    std::vector<double> likelihood; // P(history | true state j)
    bool conclusive = false;
};

// Sequential elimination: test states in index order, each on energy
// f/m * alpha_sq, stopping once two candidates remain or every state has
// been tested.
std::vector<History> enumerate_histories(int m, double alpha_sq, double f) {
    const double stage_energy = f * alpha_sq / m;
    std::vector<double> theta(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        theta[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / m;

    std::vector<History> out;
    std::vector<double> like(static_cast<std::size_t>(m), 1.0);

    auto record = [&](int k, unsigned eliminated, bool conclusive,
                      const std::vector<double>& l) {
        History h;
        h.n_tests = k;
        h.conclusive = conclusive;
        h.likelihood = l;
        if (conclusive) {
            int surv[2] = {-1, -1};
            int idx = 0;
            for (int j = 0; j < m; ++j)
                if (!(eliminated >> j & 1u)) {
                    if (idx < 2) surv[idx] = j;
                    ++idx;
                }
            h.survivor_a = surv[0];
            h.survivor_b = surv[1];
        }
        out.push_back(std::move(h));
    };

    auto rec = [&](auto&& self, int k, unsigned eliminated,
                   std::vector<double>& l) -> void {
        const int remaining = m - std::popcount(eliminated);
        if (remaining == 2) {
            record(k, eliminated, true, l);
            return;
        }
        if (k == m) {
            record(k, eliminated, false, l);
            return;
        }
        std::vector<double> l0(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            l0[static_cast<std::size_t>(j)] = vacuum_likelihood(
                theta[static_cast<std::size_t>(k)], theta[static_cast<std::size_t>(j)],
                stage_energy);

        std::vector<double> next(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            next[static_cast<std::size_t>(j)] =
                l[static_cast<std::size_t>(j)] * l0[static_cast<std::size_t>(j)];
        self(self, k + 1, eliminated, next);

        double mass = 0.0;
        for (int j = 0; j < m; ++j) {
            next[static_cast<std::size_t>(j)] =
                l[static_cast<std::size_t>(j)] * (1.0 - l0[static_cast<std::size_t>(j)]);
            mass += next[static_cast<std::size_t>(j)];
        }
        if (mass > 0.0) self(self, k + 1, eliminated | (1u << k), next);
    };
    rec(rec, 0, 0u, like);
    return out;
}

double history_weight(const History& h, int m) {
    double s = std::accumulate(h.likelihood.begin(), h.likelihood.end(), 0.0);
    return s / m;
}

} // namespace

double min_inconclusive_prob(int m, double alpha_sq, double f) {
    if (m < 3 || m > 20)
        throw std::invalid_argument("m must lie in [3, 20]");
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(f > 0.0 && f <= 1.0))
        throw std::invalid_argument("f must lie in (0, 1]");

    const std::vector<History> hs = enumerate_histories(m, alpha_sq, f);
    double total = 0.0, inconclusive = 0.0;
    for (const History& h : hs) {
        const double w = history_weight(h, m);
        total += w;
        if (!h.conclusive) inconclusive += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::logic_error("elimination histories do not partition unity");
    return inconclusive;
}

HybridResult hybrid_tpsk(const MpskConfig& config, int n_bins) {
    config.validate();
    if (config.m != 3)
        throw std::invalid_argument("hybrid_tpsk supports m = 3 only");

    const std::vector<History> hs =
        enumerate_histories(config.m, config.alpha_sq, config.f);

    HybridResult res;
    double p_conc = 0.0;
    for (const History& h : hs) {
        const double w = history_weight(h, config.m);
        if (h.conclusive)
            p_conc += w;
        else
            res.p_i_stage1 += w;
    }
    if (!(config.target_pi2 < p_conc))
        throw std::invalid_argument(
            "target_pi2 must be below the conclusive probability of the "
            "elimination stage");

    // Uniform conditional budget: every conclusive history contributes to
    // P_I^(2) in proportion to its probability.
    const double pi2_each = config.target_pi2 / p_conc;

    for (const History& h : hs) {
        if (!h.conclusive) continue;
        const double w = history_weight(h, config.m);
        const double la = h.likelihood[static_cast<std::size_t>(h.survivor_a)];
        const double lb = h.likelihood[static_cast<std::size_t>(h.survivor_b)];
        const double p_pair = std::max(la, lb) / (la + lb);

        const double residual =
            (1.0 - h.n_tests * config.f / config.m) * config.alpha_sq;
        const double dtheta =
            2.0 * std::numbers::pi * (h.survivor_a - h.survivor_b) / config.m;
        const double beta_sq = 0.5 * residual * (1.0 - std::cos(dtheta));

        StrategySpec spec = solve_strategy(beta_sq, p_pair, pi2_each, 1e-6, n_bins);
        ProbabilityTriple fin =
            evaluate_strategy(spec.t1, spec.v, beta_sq, p_pair, n_bins);
        res.p_i_stage2 += w * fin.p_i;
        res.p_e += w * fin.p_e;
    }
    res.p_i_total = res.p_i_stage1 + res.p_i_stage2;
    res.conditional_error = res.p_e / (1.0 - res.p_i_total);
    return res;
}

namespace {

struct HeterodyneGrid {
    // outcome cells sorted by maximum posterior, with cumulative weights
    std::vector<double> cum_weight;
    std::vector<double> cum_error;
};

HeterodyneGrid build_heterodyne_grid(int m, double alpha_sq) {
    const double sigma = std::sqrt(0.5);
    const double half = std::sqrt(alpha_sq) + 6.0 * sigma;
    const double h = 0.01;
    const int n = static_cast<int>(std::ceil(2.0 * half / h));

    std::vector<double> ax(static_cast<std::size_t>(m)), ay(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        ax[static_cast<std::size_t>(j)] = std::sqrt(alpha_sq) * std::cos(th);
        ay[static_cast<std::size_t>(j)] = std::sqrt(alpha_sq) * std::sin(th);
    }

    struct Cell {
        double max_post;
        double weight;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    const double inv_pi = 1.0 / std::numbers::pi;
    for (int iy = 0; iy < n; ++iy) {
        const double y = -half + (iy + 0.5) * h;
        for (int ix = 0; ix < n; ++ix) {
            const double x = -half + (ix + 0.5) * h;
            double qsum = 0.0, qmax = 0.0;
            for (int j = 0; j < m; ++j) {
                const double dx = x - ax[static_cast<std::size_t>(j)];
                const double dy = y - ay[static_cast<std::size_t>(j)];
                const double q = inv_pi * std::exp(-(dx * dx + dy * dy));
                qsum += q;
                qmax = std::max(qmax, q);
            }
            cells.push_back({qmax / qsum, qsum / m * h * h});
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.max_post < b.max_post; });

    HeterodyneGrid grid;
    grid.cum_weight.resize(cells.size());
    grid.cum_error.resize(cells.size());
    double cw = 0.0, ce = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cw += cells[i].weight;
        ce += (1.0 - cells[i].max_post) * cells[i].weight;
        grid.cum_weight[i] = cw;
        grid.cum_error[i] = ce;
    }
    return grid;
}

} // namespace

double heterodyne_baseline(int m, double alpha_sq, double target_pi) {
    if (m < 2 || m > 20)
        throw std::invalid_argument("m must lie in [2, 20]");
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(target_pi >= 0.0 && target_pi < 1.0))
        throw std::invalid_argument("target_pi must lie in [0, 1)");

    const HeterodyneGrid grid = build_heterodyne_grid(m, alpha_sq);
    const double total_mass = grid.cum_weight.back();
    const double total_error = grid.cum_error.back();
    const double target = target_pi * total_mass;

    const auto it =
        std::lower_bound(grid.cum_weight.begin(), grid.cum_weight.end(), target);
    const std::size_t i =
        static_cast<std::size_t>(it - grid.cum_weight.begin());
    double inc_error;
    if (i == 0) {
        inc_error = 0.0;
    } else {
        // split the boundary cell fractionally so P_I matches the target
        const double below_w = grid.cum_weight[i - 1];
        const double below_e = grid.cum_error[i - 1];
        if (i < grid.cum_weight.size()) {
            const double cell_w = grid.cum_weight[i] - below_w;
            const double cell_e = grid.cum_error[i] - below_e;
            const double frac = cell_w > 0.0 ? (target - below_w) / cell_w : 0.0;
            inc_error = below_e + frac * cell_e;
        } else {
            inc_error = below_e;
        }
    }
    return (total_error - inc_error) / (1.0 - target_pi);
}

double heterodyne_baseline_mc(int m, double alpha_sq, double target_pi,
                              std::uint64_t n_samples, std::uint64_t seed) {
    if (m < 2 || m > 20)
        throw std::invalid_argument("m must lie in [2, 20]");
    if (n_samples < 100)
        throw std::invalid_argument("n_samples must be >= 100");

    std::vector<double> ax(static_cast<std::size_t>(m)), ay(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        ax[static_cast<std::size_t>(j)] = std::sqrt(alpha_sq) * std::cos(th);
        ay[static_cast<std::size_t>(j)] = std::sqrt(alpha_sq) * std::sin(th);
    }

    std::vector<double> posts;
    posts.reserve(n_samples);
    double err_sum = 0.0;
    TrialRng rng(seed);
    for (std::uint64_t t = 0; t < n_samples; ++t) {
        const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
        // Box-Muller; outcome density exp(-|z - alpha_j|^2)/pi has
        // variance 1/2 per quadrature.
        const double u1 = 1.0 - rng.next_double();
        const double u2 = rng.next_double();
        const double r = std::sqrt(-std::log(u1));
        const double x = ax[static_cast<std::size_t>(j)] +
                         r * std::cos(2.0 * std::numbers::pi * u2);
        const double y = ay[static_cast<std::size_t>(j)] +
                         r * std::sin(2.0 * std::numbers::pi * u2);
        double qsum = 0.0, qmax = 0.0;
        for (int jj = 0; jj < m; ++jj) {
            const double dx = x - ax[static_cast<std::size_t>(jj)];
            const double dy = y - ay[static_cast<std::size_t>(jj)];
            const double q = std::exp(-(dx * dx + dy * dy));
            qsum += q;
            qmax = std::max(qmax, q);
        }
        posts.push_back(qmax / qsum);
    }
    std::vector<std::size_t> order(posts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return posts[a] < posts[b]; });
    const std::size_t cut =
        static_cast<std::size_t>(target_pi * static_cast<double>(n_samples));
    for (std::size_t i = cut; i < order.size(); ++i)
        err_sum += 1.0 - posts[order[i]];
    const double n_conc = static_cast<double>(n_samples - cut);
    return n_conc > 0.0 ? err_sum / n_conc : 0.0;
}

std::vector<ScalingPoint> scaling_study(const std::vector<int>& m_range,
                                        double alpha_sq_per_bit) {
    if (!(alpha_sq_per_bit > 0.0))
        throw std::invalid_argument("alpha_sq_per_bit must be > 0");
    std::vector<ScalingPoint> out;
    out.reserve(m_range.size());
    for (int m : m_range) {
        const double a = alpha_sq_per_bit * std::log2(static_cast<double>(m));
        const double f = (m - 1.0) / m;
        const double pi1 = min_inconclusive_prob(m, a, f);
        out.push_back({m, std::log10(1.0 - pi1)});
    }
    return out;
}

} // namespace oim
