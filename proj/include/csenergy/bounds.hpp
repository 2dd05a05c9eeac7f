#ifndef CSENERGY_BOUNDS_HPP
#define CSENERGY_BOUNDS_HPP

#include "csenergy/signal.hpp"

#include <cstddef>

namespace csenergy {

struct BoundParams {
    std::size_t n = 0;
    std::size_t m = 0;
    double p = 0.0;    // per-entry nonzero probability
    int Q = 1;         // precision bits
    double eps = 0.0;  // average block error probability
    double rho = 1.0;  // lattice packing radius (meters)
    double C0 = 1.0;   // signal constant sum|X_i|^q / (k U^q), in (0, 1]

    double rate() const { return static_cast<double>(m) / static_cast<double>(n); }
};

struct BoundValue {
    double value = 0.0;
    bool vacuous = false;     // R >= 1/4 or a vanishing/negative log factor
    const char* reason = "";  // short tag when vacuous
};

// Information-friction lower bound on bit-meters:
//   (rho C0 / 24 sqrt 2) * n (1/4 - R) p Q
//     * sqrt(1/(2R) - (1 - R^2 + 2R)/(1+R)^2) * sqrt(log_p(10 eps)).
// Returns a tagged zero in the vacuous regimes instead of failing, so
// parameter sweeps can cross them. Throws std::domain_error when a radicand
// is negative inside the valid regime and std::invalid_argument for
// out-of-domain parameters.
BoundValue lower_bound_theorem1(const BoundParams& params);

// Order-level benchmark sqrt(n k^2 / (m log n)) * min(sqrt k, sqrt log(1/eps))
// with unit constant; only meaningful for slope comparisons.
double scaling_lower_bound(std::size_t n, std::size_t k, std::size_t m, double eps);

// Instance constant C0 = sum |X_i|^q / (k U^q); 0 for an empty support.
double instance_c0(const SparseSignal& sig, double q);

} // namespace csenergy

#endif
