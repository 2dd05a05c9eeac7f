#ifndef CSENERGY_SIGNAL_HPP
#define CSENERGY_SIGNAL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace csenergy {

enum class SparsityModel { Combinatorial, Probabilistic };

// Length-n input vector with bounded nonzero entries.
struct SparseSignal {
    std::vector<double> values;        // length n, zero off support
    std::vector<std::size_t> support;  // strictly increasing nonzero indices
    double magnitude_bound = 1.0;      // U
    SparsityModel model = SparsityModel::Combinatorial;
    double model_param = 0.0;          // k for combinatorial, p for probabilistic

    std::size_t n() const { return values.size(); }
    std::string to_json() const;
};

struct ErrorSpec {
    double norm_order = 1.0;  // q in [0, inf]
    int precision_bits = 8;   // Q >= 1
};

// Fraction of U below which nonzero magnitudes are not generated. The model
// only bounds |X_i| from above; detection at Q-bit precision needs values
// bounded away from zero, so draws are uniform on [-U,-dU] u [dU,U].
inline constexpr double kMagnitudeFloorFraction = 1.0 / 16.0;

SparseSignal gen_combinatorial(std::size_t n, std::size_t k, double bound,
                               std::uint64_t seed,
                               double floor_fraction = kMagnitudeFloorFraction);

SparseSignal gen_probabilistic(std::size_t n, double p, double bound,
                               std::uint64_t seed,
                               double floor_fraction = kMagnitudeFloorFraction);

// ||x - xhat||_q / ||x||_q. q = 0 counts entry mismatches; q = inf is max-abs.
// Throws std::domain_error for a zero signal with a nonzero estimate.
double relative_error(const SparseSignal& truth, const std::vector<double>& estimate,
                      const ErrorSpec& spec);

// True iff the relative error exceeds 2^-Q (strict, per the error model).
bool block_error_flag(const SparseSignal& truth, const std::vector<double>& estimate,
                      const ErrorSpec& spec);

// Round v to Q significand bits; |quantize(v) - v| <= 2^-Q * |v|.
double quantize_value(double v, int precision_bits);

} // namespace csenergy

#endif
