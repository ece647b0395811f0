#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oim/evolution.hpp"
#include "oim/types.hpp"

namespace oim {

struct TradeoffPoint {
    double target_pi = 0.0;
    double achieved_pi = 0.0;
    double achieved_pe = 0.0;
    double t1 = 1.0;
    double v = 0.5;
    int n0 = 1;
    bool converged = true;
    std::string note;
};

// Thrown when no strategy meets the target; carries the closest candidate.
struct SolveError : std::runtime_error {
    StrategySpec best;
    double best_pi;
    SolveError(const std::string& msg, StrategySpec b, double pi)
        : std::runtime_error(msg), best(b), best_pi(pi) {}
};

// Final outcome probabilities of candidate parameters under ideal devices.
ProbabilityTriple evaluate_strategy(double t1, double v, double alpha_sq,
                                    double p, int n_bins = 1024);

// Find (t1, v, n0) meeting target_pi within tol with minimal error, under
// ideal devices. Switch times are restricted to the bin grid t1 = m/n_bins.
StrategySpec solve_strategy(double alpha_sq, double p, double target_pi,
                            double tol = 1e-6, int n_bins = 1024);

// Unambiguous endpoint: the strategy minimizing the inconclusive
// probability subject to (numerically) zero error.
StrategySpec solve_usd_endpoint(double alpha_sq, double p = 0.5,
                                int n_bins = 1024);

// Solve each grid point under ideal devices, then re-evaluate the solved
// strategy under imp (strategies designed ideally, executed imperfectly).
std::vector<TradeoffPoint> tradeoff_curve(double alpha_sq, double p,
                                          const std::vector<double>& pi_grid,
                                          const ImperfectionModel& imp,
                                          double tol = 1e-6);

// For each LO power ratio R, the squared distance g^2 between the
// unambiguous endpoint executed with the clamp and executed unclamped.
std::vector<std::pair<double, double>> gap_scaling(double alpha_sq,
                                                   const std::vector<double>& r_values,
                                                   int n_bins = 4096);

} // namespace oim
