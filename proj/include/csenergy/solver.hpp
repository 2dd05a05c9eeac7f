#ifndef CSENERGY_SOLVER_HPP
#define CSENERGY_SOLVER_HPP

#include "csenergy/matrix.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace csenergy {

enum class DetectKind { Zero, Singleton, Multi };

struct DetectResult {
    DetectKind kind = DetectKind::Multi;
    std::size_t index = 0;  // column id
    double value = 0.0;     // quantized to the precision contract
};

struct SolveTolerances {
    double tau_zero = 1e-9;   // absolute residual floor, caller pre-scales
    double tau_match = 1e-7;  // relative match tolerance
    double min_magnitude = 0.0;  // reject recovered values below this
};

// Three-way singleton test over one group's c measurements. `columns` lists
// candidate columns with their per-row phases (radians). The value is
// recovered as the real least-squares scalar and quantized to
// `precision_bits` significand bits. Two columns matching at once is
// reported as Multi.
DetectResult detect_singleton(const std::vector<cplx>& y,
                              const std::vector<std::pair<std::uint32_t, std::vector<double>>>& columns,
                              int precision_bits, const SolveTolerances& tol);

struct SolveEntry {
    std::uint32_t col;
    double value;  // full precision; quantize at transmission
};

// Joint solver used by the stage decoders: explain the residual of `rows`
// (global row ids into A, with residual values `resid`) by at most `s_max`
// entries drawn from one candidate column set, or from two sets when the
// residual is known to split across two cells.
//
// Exact enumeration handles supports of size <= 3 (size <= 2 per side for
// the two-cell case); larger supports go through a greedy correlation pass
// over the verification rows. Every hit is verified against all rows and
// against the magnitude floor before being accepted.
class GroupSolver {
public:
    GroupSolver(const EncodingMatrix& A, SolveTolerances tol) : A_(&A), tol_(tol) {}

    std::optional<std::vector<SolveEntry>> solve_single(
        const std::vector<std::uint32_t>& rows, const std::vector<cplx>& resid,
        const std::vector<std::uint32_t>& cands, unsigned s_max,
        std::size_t enum3_limit = 200) const;

    std::optional<std::vector<SolveEntry>> solve_two_cell(
        const std::vector<std::uint32_t>& rows, const std::vector<cplx>& resid,
        const std::vector<std::uint32_t>& cands_a, const std::vector<std::uint32_t>& cands_b,
        const std::vector<std::uint32_t>& private_a, const std::vector<std::uint32_t>& private_b,
        unsigned total_max) const;

    bool is_zero(const std::vector<cplx>& resid) const;

    struct Table;  // per-attempt phase table

private:
    std::optional<std::vector<SolveEntry>> exact_pair(const Table& T) const;
    std::optional<std::vector<SolveEntry>> exact_triple(const Table& T) const;
    std::optional<std::vector<SolveEntry>> greedy(const Table& T, unsigned s_min,
                                                  unsigned s_max) const;
    bool verify(const Table& T, const std::vector<std::uint32_t>& picks,
                std::vector<double>& values) const;

    const EncodingMatrix* A_;
    SolveTolerances tol_;
};

} // namespace csenergy

#endif
