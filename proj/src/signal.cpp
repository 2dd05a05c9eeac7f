#include "csenergy/signal.hpp"
#include "csenergy/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csenergy {

namespace {

double draw_magnitude(SplitRng& rng, double bound, double floor_fraction) {
    double lo = bound * floor_fraction;
    double mag = rng.uniform(lo, bound);
    return rng.next_double() < 0.5 ? -mag : mag;
}

} // namespace

SparseSignal gen_combinatorial(std::size_t n, std::size_t k, double bound,
                               std::uint64_t seed, double floor_fraction) {
    if (k > n) throw std::invalid_argument("gen_combinatorial: k > n");
    if (bound <= 0.0) throw std::invalid_argument("gen_combinatorial: U <= 0");

    SparseSignal sig;
    sig.values.assign(n, 0.0);
    sig.magnitude_bound = bound;
    sig.model = SparsityModel::Combinatorial;
    sig.model_param = static_cast<double>(k);

    // Floyd's sampling of k distinct indices, then sort.
    SplitRng idx_rng = SplitRng(seed).split(0);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = n - k; j < n; ++j) {
        std::size_t t = static_cast<std::size_t>(idx_rng.next_below(j + 1));
        if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) t = j;
        chosen.push_back(t);
    }
    std::sort(chosen.begin(), chosen.end());

    SplitRng val_rng = SplitRng(seed).split(1);
    for (std::size_t idx : chosen) {
        sig.values[idx] = draw_magnitude(val_rng, bound, floor_fraction);
    }
    sig.support = std::move(chosen);
    return sig;
}

SparseSignal gen_probabilistic(std::size_t n, double p, double bound,
                               std::uint64_t seed, double floor_fraction) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("gen_probabilistic: p outside (0,1)");
    if (bound <= 0.0) throw std::invalid_argument("gen_probabilistic: U <= 0");

    SparseSignal sig;
    sig.values.assign(n, 0.0);
    sig.magnitude_bound = bound;
    sig.model = SparsityModel::Probabilistic;
    sig.model_param = p;

    SplitRng idx_rng = SplitRng(seed).split(0);
    SplitRng val_rng = SplitRng(seed).split(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (idx_rng.next_double() < p) {
            sig.values[i] = draw_magnitude(val_rng, bound, floor_fraction);
            sig.support.push_back(i);
        }
    }
    return sig;
}

double relative_error(const SparseSignal& truth, const std::vector<double>& estimate,
                      const ErrorSpec& spec) {
    const std::size_t n = truth.n();
    if (estimate.size() != n) throw std::invalid_argument("relative_error: length mismatch");
    const double q = spec.norm_order;
    if (q < 0.0) throw std::invalid_argument("relative_error: q < 0");

    double num = 0.0, den = 0.0;
    if (q == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (truth.values[i] != estimate[i]) num += 1.0;
            if (truth.values[i] != 0.0) den += 1.0;
        }
    } else if (std::isinf(q)) {
        for (std::size_t i = 0; i < n; ++i) {
            num = std::max(num, std::abs(truth.values[i] - estimate[i]));
            den = std::max(den, std::abs(truth.values[i]));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            num += std::pow(std::abs(truth.values[i] - estimate[i]), q);
            den += std::pow(std::abs(truth.values[i]), q);
        }
        num = std::pow(num, 1.0 / q);
        den = std::pow(den, 1.0 / q);
    }
    if (den == 0.0) {
        if (num == 0.0) return 0.0;
        throw std::domain_error("relative_error: zero signal with nonzero estimate");
    }
    return num / den;
}

bool block_error_flag(const SparseSignal& truth, const std::vector<double>& estimate,
                      const ErrorSpec& spec) {
    return relative_error(truth, estimate, spec) > std::ldexp(1.0, -spec.precision_bits);
}

double quantize_value(double v, int precision_bits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    int e = 0;
    double mant = std::frexp(v, &e);  // |mant| in [0.5, 1)
    double scale = std::ldexp(1.0, precision_bits);
    return std::ldexp(std::round(mant * scale) / scale, e);
}

std::string SparseSignal::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"n\":" << n() << ",\"model\":\""
       << (model == SparsityModel::Combinatorial ? "combinatorial" : "probabilistic")
       << "\",\"params\":{"
       << (model == SparsityModel::Combinatorial ? "\"k\":" : "\"p\":") << model_param
       << ",\"U\":" << magnitude_bound << "},\"support\":[";
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (i) os << ",";
        os << "[" << support[i] << "," << values[support[i]] << "]";
    }
    os << "]}";
    return os.str();
}

} // namespace csenergy
