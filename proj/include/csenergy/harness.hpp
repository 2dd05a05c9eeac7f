#ifndef CSENERGY_HARNESS_HPP
#define CSENERGY_HARNESS_HPP

#include "csenergy/bounds.hpp"
#include "csenergy/decoder.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace csenergy {

enum class Algorithm { CA, SA };

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::CA;
    LayoutKind layout = LayoutKind::Distributed;
    std::vector<std::size_t> n_grid;
    double beta = 0.5;          // k = ceil(n^(1-beta))
    unsigned c = 0;             // measurement constant; 0 = per-algorithm default
    unsigned C = 1;             // first-stage group multiplier
    unsigned growth = 2;        // phi / psi
    int Q = 8;                  // precision bits
    double rho = 1.0;           // lattice packing radius
    unsigned scalar_bits = 0;   // bits per transmitted scalar; 0 = Q + 8
    double U = 1.0;             // magnitude bound
    std::size_t trials = 50;
    std::uint64_t base_seed = 1;
    std::string output_path;

    unsigned effective_c() const {
        if (c) return c;
        return algorithm == Algorithm::CA ? 3u : 4u;
    }
    std::size_t k_of(std::size_t n) const;
};

struct TrialRecord {
    std::size_t n = 0, k = 0, m = 0;
    Algorithm algorithm = Algorithm::CA;
    LayoutKind layout = LayoutKind::Distributed;
    std::uint64_t seed = 0;
    std::size_t support_size = 0;
    double bit_meters_total = 0.0;
    std::vector<double> stage_meters;        // clearing last
    std::vector<std::size_t> stage_resolved; // clearing last
    std::size_t resolved_pre_clearing = 0;
    std::size_t unresolved_count = 0;  // true support entries never recovered
    bool block_error = false;
    double c0 = 0.0;          // instance constant of the generated signal
    double wall_time_ms = 0.0;  // informational; never serialized
};

// One full generate -> encode -> lay out -> decode -> meter pipeline.
// Deterministic given (config, n, trial_index).
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index);

// Cartesian product of the n-grid and trial indices, executed on a small
// worker pool (CSENERGY_THREADS caps it); records come back sorted by
// (n, trial) so output is schedule-independent.
std::vector<TrialRecord> sweep(const ExperimentConfig& cfg);

void write_csv(const std::vector<TrialRecord>& records, std::ostream& os);
std::vector<TrialRecord> read_csv(std::istream& is);
std::string trial_to_json(const TrialRecord& r);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

enum class FitAxis { NK, N };

// OLS of log(median bit-meters per grid point) against log(nk) or log(n).
FitResult fit_scaling(const std::vector<TrialRecord>& records, FitAxis axis);

struct BoundComparison {
    std::size_t n = 0, k = 0, m = 0;
    double measured_median = 0.0;
    double bound = 0.0;
    bool vacuous = false;
    double ratio = 0.0;  // measured / bound when non-vacuous
};

// Per grid point: median measured bit-meters vs the Theorem-1 value with the
// instance-honest C0 (median over the point's trials) and target error
// probability 1/sqrt(k).
std::vector<BoundComparison> compare_bound(const std::vector<TrialRecord>& records,
                                           int Q, double rho);

std::size_t worker_count();

} // namespace csenergy

#endif
