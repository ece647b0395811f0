#include "oim/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace oim {

double overlap_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    return std::exp(-4.0 * alpha_sq);
}

double helstrom_error(double alpha_sq, double p) {
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");
    const double disc = 1.0 - 4.0 * p * (1.0 - p) * overlap_sq(alpha_sq);
    return 0.5 * (1.0 - std::sqrt(std::fmax(disc, 0.0)));
}

double idp_bound(double alpha_sq) {
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    return std::exp(-2.0 * alpha_sq);
}

double homodyne_error(double alpha_sq) {
    if (!(alpha_sq >= 0.0))
        throw std::invalid_argument("alpha_sq must be >= 0");
    return 0.5 * (1.0 - std::erf(std::sqrt(2.0 * alpha_sq)));
}

} // namespace oim
