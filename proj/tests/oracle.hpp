// Test-only reference implementations, kept deliberately independent of the
// library's solver internals: plain exhaustive scans written from the
// definitions.
#ifndef CSENERGY_TESTS_ORACLE_HPP
#define CSENERGY_TESTS_ORACLE_HPP

#include "csenergy/signal.hpp"
#include "csenergy/solver.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

enum class Kind { Zero, Singleton, Multi };

struct Result {
    Kind kind = Kind::Multi;
    std::uint32_t index = 0;
    double value = 0.0;
};

// Exhaustive singleton scan: for every candidate column, fit the single real
// scalar by least squares and test the match row by row. Anything other
// than exactly one matching column is not a singleton.
inline Result detect_singleton_bruteforce(
    const std::vector<std::complex<double>>& y,
    const std::vector<std::pair<std::uint32_t, std::vector<double>>>& columns,
    int precision_bits, double tau_zero = 1e-9, double tau_match = 1e-7) {
    Result out;
    double ymax = 0.0;
    for (const auto& z : y) ymax = std::max(ymax, std::abs(z));
    if (ymax <= tau_zero) {
        out.kind = Kind::Zero;
        return out;
    }
    double thr = tau_match * std::max(1.0, ymax);
    int matches = 0;
    for (const auto& [col, phases] : columns) {
        // b minimizing sum |y_r - b e^{i phase_r}|^2
        double num = 0.0, den = 0.0;
        for (std::size_t r = 0; r < y.size(); ++r) {
            std::complex<double> u{std::cos(phases[r]), std::sin(phases[r])};
            num += (std::conj(u) * y[r]).real();
            den += 1.0;
        }
        double b = num / den;
        bool fits = true;
        for (std::size_t r = 0; r < y.size() && fits; ++r) {
            std::complex<double> u{std::cos(phases[r]), std::sin(phases[r])};
            fits = std::abs(y[r] - b * u) <= thr;
        }
        if (fits) {
            ++matches;
            out.index = col;
            out.value = csenergy::quantize_value(b, precision_bits);
        }
    }
    out.kind = matches == 1 ? Kind::Singleton : Kind::Multi;
    return out;
}

// Reference peeling success check over an explicit bipartite graph: buckets
// hold column lists; a bucket with exactly one unresolved support entry
// resolves it. Returns true when every support entry peels.
inline bool reference_peel(const std::vector<std::vector<std::uint32_t>>& bucket_cols,
                           std::vector<std::uint32_t> support) {
    std::vector<bool> resolved(support.size(), false);
    bool progress = true;
    std::size_t left = support.size();
    while (progress && left > 0) {
        progress = false;
        for (const auto& cols : bucket_cols) {
            int hit = -1;
            int count = 0;
            for (std::size_t s = 0; s < support.size(); ++s) {
                if (resolved[s]) continue;
                for (std::uint32_t c : cols) {
                    if (c == support[s]) {
                        ++count;
                        hit = static_cast<int>(s);
                        break;
                    }
                }
            }
            if (count == 1) {
                resolved[static_cast<std::size_t>(hit)] = true;
                --left;
                progress = true;
            }
        }
    }
    return left == 0;
}

} // namespace oracle

#endif
