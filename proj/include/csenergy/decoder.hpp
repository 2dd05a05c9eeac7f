#ifndef CSENERGY_DECODER_HPP
#define CSENERGY_DECODER_HPP

#include "csenergy/layout.hpp"
#include "csenergy/ledger.hpp"
#include "csenergy/matrix.hpp"
#include "csenergy/signal.hpp"
#include "csenergy/solver.hpp"

#include <cstdint>
#include <vector>

namespace csenergy {

struct DecodeOptions {
    ErrorSpec spec;                 // precision contract Q (and the norm for callers)
    double tau_zero_rel = 1e-9;     // zero test, relative to the measurement scale
    double tau_match_rel = 1e-7;    // match tolerance
    unsigned tag_bits = 8;          // bits per transmitted scalar = Q + tag_bits
    double magnitude_floor = 0.0;   // reject recovered values below this (delta/2)
    bool trace = false;
    std::vector<unsigned> stage_caps;  // per-stage max joint support; empty = defaults
    std::size_t enum3_limit = 200;

    unsigned scalar_bits() const {
        return static_cast<unsigned>(spec.precision_bits) + tag_bits;
    }
};

struct StageStats {
    std::size_t groups_processed = 0;
    std::size_t singletons = 0;
    std::size_t resolved_entries = 0;
    std::size_t forwards = 0;
};

struct DecodeResult {
    std::vector<double> estimate;               // quantized recovered vector
    std::vector<std::uint32_t> unresolved_cells;  // stage-1 cells still carrying residual
    std::size_t unresolved_buckets = 0;         // clearing buckets the peel gave up on
    std::size_t resolved_before_clearing = 0;
    BitMeterLedger ledger;
    std::vector<StageStats> stage_stats;        // one per stage, clearing last
};

// Per-stage joint-support caps. The schedule ramps up with the number of
// measurement scales a hub has accumulated; the final local stage does
// maximal local effort before the global clearing pass.
std::vector<unsigned> default_ca_caps(std::size_t regular_stages, unsigned c);
std::vector<unsigned> default_sa_caps(std::size_t regular_stages, unsigned c);

DecodeResult ca_decode(const std::vector<cplx>& y, const EncodingMatrix& A,
                       const GroupPlan& plan, const CircuitLayout& layout,
                       const DecodeOptions& opt);

DecodeResult sa_decode(const std::vector<cplx>& y, const EncodingMatrix& A,
                       const GroupPlan& plan, const CircuitLayout& layout,
                       const DecodeOptions& opt);

} // namespace csenergy

#endif
