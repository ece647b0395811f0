#pragma once

namespace oim {

// Squared overlap |<-alpha|alpha>|^2 of the two input states.
double overlap_sq(double alpha_sq);

// Minimum-error (Helstrom) bound for discriminating |alpha> vs |-alpha>
// with prior p on one of the hypotheses.
double helstrom_error(double alpha_sq, double p);

// Minimum inconclusive probability of unambiguous discrimination at equal
// priors, |<-alpha|alpha>| = e^(-2 alpha_sq).
double idp_bound(double alpha_sq);

// Error probability of an ideal homodyne (Gaussian) receiver at equal priors.
double homodyne_error(double alpha_sq);

} // namespace oim
