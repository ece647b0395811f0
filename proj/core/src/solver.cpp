#include "oim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "oim/bounds.hpp"
#include "oim/waveform.hpp"

namespace oim {
namespace {

constexpr double kVLo = 1e-9;
constexpr double kVSeam = 0.5;
constexpr double kVSeamHi = 0.5 + 1e-12;
constexpr double kVHi = 1.0 - 1e-9;

int n0_for(double v) { return v > 0.5 ? 0 : 1; }

StrategySpec make_spec(double alpha_sq, double p, double target_pi, double t1,
                       double v) {
    StrategySpec s;
    s.alpha_sq = alpha_sq;
    s.p = p;
    s.target_pi = target_pi;
    s.t1 = t1;
    s.v = v;
    s.n0 = n0_for(v);
    return s;
}

struct Candidate {
    int m = 0;
    double v = 0.5;
    double pi = 0.0;
    double pe = 1.0;
    bool valid = false;
};

class IdealEvaluator {
  public:
    IdealEvaluator(double alpha_sq, double p, int n_bins)
        : alpha_sq_(alpha_sq), p_(p), imp_(ImperfectionModel::ideal(n_bins)) {}

    ProbabilityTriple at(double t1, double v) const {
        StrategySpec spec = make_spec(alpha_sq_, p_, 0.0, t1, v);
        WaveformTable wf = build_waveform(spec, imp_);
        return evolve(spec, wf, imp_).final();
    }

    ProbabilityTriple at_bin(int m, double v) const {
        return at(static_cast<double>(m) / imp_.n_bins, v);
    }

    int n_bins() const { return imp_.n_bins; }

  private:
    double alpha_sq_;
    double p_;
    ImperfectionModel imp_;
};

// P_I is monotone decreasing in v on each branch; bisect to the target.
std::optional<Candidate> v_root(const IdealEvaluator& ev, int m, double vlo,
                                double vhi, double target_pi, double tol) {
    ProbabilityTriple lo = ev.at_bin(m, vlo);
    if (lo.p_i < target_pi - tol) return std::nullopt;
    ProbabilityTriple hi = ev.at_bin(m, vhi);
    if (hi.p_i > target_pi + tol) return std::nullopt;

    double a = vlo, b = vhi;
    ProbabilityTriple mid = lo;
    double v = vlo;
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        v = 0.5 * (a + b);
        mid = ev.at_bin(m, v);
        if (std::abs(mid.p_i - target_pi) <= 0.1 * tol) break;
        if (mid.p_i > target_pi)
            a = v;
        else
            b = v;
    }
    Candidate c;
    c.m = m;
    c.v = v;
    c.pi = mid.p_i;
    c.pe = mid.p_e;
    c.valid = std::abs(mid.p_i - target_pi) <= tol;
    return c;
}

// Best error at a fixed switch bin over both v branches.
Candidate best_at_m(const IdealEvaluator& ev, int m, double target_pi,
                    double tol) {
    Candidate best;
    best.m = m;
    for (auto [vlo, vhi] : {std::pair{kVLo, kVSeam}, std::pair{kVSeamHi, kVHi}}) {
        auto c = v_root(ev, m, vlo, vhi, target_pi, tol);
        if (c && c->valid && (!best.valid || c->pe < best.pe)) best = *c;
    }
    return best;
}

// Tie-break toward smaller switch times: a penalty far below solver
// precision keeps the argmin deterministic on flat ridges.
double score(const Candidate& c) {
    if (!c.valid) return std::numeric_limits<double>::infinity();
    return c.pe + 1e-12 * c.m;
}

// Golden-section descent of a unimodal integer function, then an exact
// window scan around the bracket.
template <typename F>
Candidate minimize_over_m(int m_lo, int m_hi, F&& eval_m) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = m_lo, b = m_hi;
    int m1 = static_cast<int>(std::lround(b - phi * (b - a)));
    int m2 = static_cast<int>(std::lround(a + phi * (b - a)));
    Candidate c1 = eval_m(std::clamp(m1, m_lo, m_hi));
    Candidate c2 = eval_m(std::clamp(m2, m_lo, m_hi));
    while (b - a > 6.0) {
        if (score(c1) <= score(c2)) {
            b = m2;
            m2 = m1;
            c2 = c1;
            m1 = static_cast<int>(std::lround(b - phi * (b - a)));
            c1 = eval_m(std::clamp(m1, m_lo, m_hi));
        } else {
            a = m1;
            m1 = m2;
            c1 = c2;
            m2 = static_cast<int>(std::lround(a + phi * (b - a)));
            c2 = eval_m(std::clamp(m2, m_lo, m_hi));
        }
    }
    const int center = static_cast<int>(std::lround(0.5 * (a + b)));
    Candidate best;
    for (int m = std::max(m_lo, center - 8); m <= std::min(m_hi, center + 8); ++m) {
        Candidate c = eval_m(m);
        if (score(c) < score(best)) best = c;
    }
    return best;
}

} // namespace

ProbabilityTriple evaluate_strategy(double t1, double v, double alpha_sq,
                                    double p, int n_bins) {
    if (!(t1 > 0.0 && t1 <= 1.0))
        throw std::invalid_argument("t1 must lie in (0, 1]");
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument("v must lie in (0, 1)");
    IdealEvaluator ev(alpha_sq, p, n_bins);
    return ev.at(t1, v);
}

StrategySpec solve_strategy(double alpha_sq, double p, double target_pi,
                            double tol, int n_bins) {
    if (!(alpha_sq > 0.0))
        throw std::invalid_argument("alpha_sq must be > 0");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");
    if (!(target_pi >= 0.0 && target_pi < 1.0))
        throw std::invalid_argument("target_pi must lie in [0, 1)");
    if (!(tol > 0.0))
        throw std::invalid_argument("tol must be > 0");

    if (target_pi == 0.0) return make_spec(alpha_sq, p, 0.0, 1.0, 0.5);

    IdealEvaluator ev(alpha_sq, p, n_bins);

    // The attainable P_I range at fixed switch bin m is
    // [P_I(m, v->1), P_I(m, v->0)]; the lower edge falls with m, so the
    // feasible bins form a right-anchored interval. Locate its start by
    // bisection before descending on the error.
    auto feasible = [&](int m) {
        if (ev.at_bin(m, kVHi).p_i > target_pi + tol) return false;
        return ev.at_bin(m, kVLo).p_i >= target_pi - tol;
    };
    const int m_hi = n_bins - 1;
    if (!feasible(m_hi)) {
        ProbabilityTriple t = ev.at_bin(m_hi, kVLo);
        StrategySpec b = make_spec(alpha_sq, p, target_pi,
                                   static_cast<double>(m_hi) / n_bins, kVLo);
        throw SolveError("no strategy reaches target_pi within tolerance", b,
                         t.p_i);
    }
    int m_lo = 1;
    if (!feasible(m_lo)) {
        int bad = m_lo, good = m_hi;
        while (good - bad > 1) {
            const int mid = bad + (good - bad) / 2;
            (feasible(mid) ? good : bad) = mid;
        }
        m_lo = good;
    }

    auto eval_m = [&](int m) { return best_at_m(ev, m, target_pi, tol); };
    Candidate best = minimize_over_m(m_lo, m_hi, eval_m);

    if (!best.valid) {
        StrategySpec b = make_spec(alpha_sq, p, target_pi,
                                   static_cast<double>(best.m) / n_bins, best.v);
        throw SolveError("no strategy reaches target_pi within tolerance", b,
                         best.pi);
    }
    StrategySpec s = make_spec(alpha_sq, p, target_pi,
                               static_cast<double>(best.m) / n_bins, best.v);
    return s;
}

StrategySpec solve_usd_endpoint(double alpha_sq, double p, int n_bins) {
    if (!(alpha_sq > 0.0))
        throw std::invalid_argument("alpha_sq must be > 0");
    IdealEvaluator ev(alpha_sq, p, n_bins);
    auto eval_m = [&](int m) {
        ProbabilityTriple t = ev.at_bin(m, kVLo);
        Candidate c;
        c.m = m;
        c.v = kVLo;
        c.pi = t.p_i;
        c.pe = t.p_i; // minimized objective; error is zero on this branch
        c.valid = true;
        return c;
    };
    Candidate best = minimize_over_m(1, n_bins - 1, eval_m);
    StrategySpec s = make_spec(alpha_sq, p, best.pi,
                               static_cast<double>(best.m) / n_bins, kVLo);
    return s;
}

std::vector<TradeoffPoint> tradeoff_curve(double alpha_sq, double p,
                                          const std::vector<double>& pi_grid,
                                          const ImperfectionModel& imp,
                                          double tol) {
    imp.validate();
    for (std::size_t i = 1; i < pi_grid.size(); ++i)
        if (!(pi_grid[i] > pi_grid[i - 1]))
            throw std::invalid_argument("pi_grid must be strictly increasing");

    std::vector<TradeoffPoint> curve;
    curve.reserve(pi_grid.size());
    for (double target : pi_grid) {
        TradeoffPoint pt;
        pt.target_pi = target;
        try {
            StrategySpec spec = solve_strategy(alpha_sq, p, target, tol, imp.n_bins);
            WaveformTable wf = build_waveform(spec, imp);
            ProbabilityTriple fin = evolve(spec, wf, imp).final();
            pt.achieved_pi = fin.p_i;
            pt.achieved_pe = fin.p_e;
            pt.t1 = spec.t1;
            pt.v = spec.v;
            pt.n0 = spec.n0;
        } catch (const SolveError& e) {
            pt.converged = false;
            pt.note = e.what();
            pt.achieved_pi = std::numeric_limits<double>::quiet_NaN();
            pt.achieved_pe = std::numeric_limits<double>::quiet_NaN();
            pt.t1 = e.best.t1;
            pt.v = e.best.v;
            pt.n0 = e.best.n0;
        }
        curve.push_back(std::move(pt));
    }
    return curve;
}

std::vector<std::pair<double, double>> gap_scaling(double alpha_sq,
                                                   const std::vector<double>& r_values,
                                                   int n_bins) {
    for (double r : r_values)
        if (!(r > 1.0))
            throw std::invalid_argument("r_values must exceed 1");

    StrategySpec spec = solve_usd_endpoint(alpha_sq, 0.5, n_bins);
    const ImperfectionModel ideal = ImperfectionModel::ideal(n_bins);
    WaveformTable wf_ref = build_waveform(spec, ideal);
    ProbabilityTriple ref = evolve(spec, wf_ref, ideal).final();

    std::vector<std::pair<double, double>> out;
    out.reserve(r_values.size());
    for (double r : r_values) {
        ImperfectionModel imp = ideal;
        imp.r_max = r;
        WaveformTable wf = build_waveform(spec, imp);
        ProbabilityTriple fin = evolve(spec, wf, imp).final();
        const double dpe = fin.p_e - ref.p_e;
        const double dpi = fin.p_i - ref.p_i;
        out.emplace_back(r, dpe * dpe + dpi * dpi);
    }
    return out;
}

} // namespace oim
