#include "csenergy/bounds.hpp"
#include "csenergy/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace csenergy {

BoundValue lower_bound_theorem1(const BoundParams& params) {
    if (params.n == 0) throw std::invalid_argument("lower_bound_theorem1: n == 0");
    if (!(params.p > 0.0 && params.p < 1.0))
        throw std::invalid_argument("lower_bound_theorem1: p outside (0,1)");
    if (params.eps <= 0.0) throw std::invalid_argument("lower_bound_theorem1: eps <= 0");
    if (params.Q < 1) throw std::invalid_argument("lower_bound_theorem1: Q < 1");
    if (params.rho <= 0.0) throw std::invalid_argument("lower_bound_theorem1: rho <= 0");
    if (!(params.C0 > 0.0 && params.C0 <= 1.0))
        throw std::invalid_argument("lower_bound_theorem1: C0 outside (0,1]");

    const double R = params.rate();
    if (R >= 0.25) return {0.0, true, "rate >= 1/4"};

    const double ten_eps = 10.0 * params.eps;
    if (ten_eps >= 1.0) {
        // log_p(10 eps) <= 0 for p < 1: no information requirement survives
        return {0.0, true, ten_eps == 1.0 ? "log factor zero" : "10*eps > 1"};
    }
    const double log_term = std::log(ten_eps) / std::log(params.p);  // >= 0 here

    const double rad = 1.0 / (2.0 * R) - (1.0 - R * R + 2.0 * R) / ((1.0 + R) * (1.0 + R));
    if (rad < 0.0) throw std::domain_error("lower_bound_theorem1: negative radicand");

    const double lead = params.rho * params.C0 / (24.0 * std::sqrt(2.0));
    const double value = lead * static_cast<double>(params.n) * (0.25 - R) * params.p *
                         static_cast<double>(params.Q) * std::sqrt(rad) * std::sqrt(log_term);
    return {value, false, ""};
}

double instance_c0(const SparseSignal& sig, double q) {
    if (sig.support.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t j : sig.support) acc += std::pow(std::abs(sig.values[j]), q);
    return acc / (static_cast<double>(sig.support.size()) *
                  std::pow(sig.magnitude_bound, q));
}

double scaling_lower_bound(std::size_t n, std::size_t k, std::size_t m, double eps) {
    if (n <= 1) throw std::invalid_argument("scaling_lower_bound: n <= 1");
    if (m == 0 || k == 0) throw std::invalid_argument("scaling_lower_bound: k, m must be positive");
    if (eps <= 0.0) throw std::invalid_argument("scaling_lower_bound: eps <= 0");
    double lead = std::sqrt(static_cast<double>(n) * static_cast<double>(k) *
                            static_cast<double>(k) /
                            (static_cast<double>(m) * std::log(static_cast<double>(n))));
    double branch = eps >= 1.0 ? 0.0 : std::sqrt(std::log(1.0 / eps));
    return lead * std::min(std::sqrt(static_cast<double>(k)), branch);
}

} // namespace csenergy
