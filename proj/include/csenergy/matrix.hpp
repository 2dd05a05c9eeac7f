#ifndef CSENERGY_MATRIX_HPP
#define CSENERGY_MATRIX_HPP

#include "csenergy/plan.hpp"
#include "csenergy/signal.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace csenergy {

using cplx = std::complex<double>;

// One measurement row: unit-magnitude complex weights on its group's columns.
struct MatrixRow {
    std::uint32_t stage;  // 1..S regular, S+1 = clearing
    std::uint32_t group;  // group id within the stage (bucket id when clearing)
    std::uint32_t kind;   // 0 = identification, >=1 = verification
};

// Stage-structured pure-phase measurement matrix. Entries are e^(i*theta)
// with the identification phase pi*r*j/(2n^2) (r, j 1-based row/column
// indices, matching the construction exactly) and verification phases
// uniform on [0, pi/2], recomputed on demand from the seed rather than
// stored. The clearing block is a d-left-regular bipartite graph from all n
// columns onto `clearing_buckets` buckets, c rows per bucket.
class EncodingMatrix {
public:
    EncodingMatrix() = default;

    std::size_t n() const { return plan_.n; }
    std::size_t m() const { return rows_.size(); }
    unsigned c() const { return c_; }
    const GroupPlan& plan() const { return plan_; }
    const MatrixRow& row(std::size_t r) const { return rows_[r]; }
    std::size_t clearing_buckets() const { return clearing_buckets_; }
    unsigned clearing_degree() const { return degree_; }
    std::size_t clearing_stage() const { return plan_.stage_count(); }

    // first row index of a (stage, group); rows of the group are contiguous
    std::size_t group_row0(std::size_t stage, std::size_t group) const;

    const std::vector<std::uint32_t>& bucket_columns(std::size_t bucket) const {
        return bucket_columns_[bucket];
    }
    const std::array<std::uint32_t, 3>& column_buckets(std::size_t col) const {
        return column_buckets_[col];
    }

    double phase(std::size_t r, std::size_t col) const;
    cplx unit(std::size_t r, std::size_t col) const {
        double th = phase(r, col);
        return {std::cos(th), std::sin(th)};
    }
    bool covers(std::size_t r, std::size_t col) const;
    // unit weight where the row is supported, zero elsewhere
    cplx entry(std::size_t r, std::size_t col) const {
        return covers(r, col) ? unit(r, col) : cplx{0.0, 0.0};
    }

    // Columns the row is supported on (materialized; prefer the plan/bucket
    // accessors in hot paths).
    std::vector<std::uint32_t> row_columns(std::size_t r) const;

    // invert an identification-row phase back to its 0-based column
    std::size_t invert_identification(std::size_t r, double theta) const;

    void serialize(std::ostream& os) const;  // JSON header + CSV triplets

    friend EncodingMatrix build_matrix(const GroupPlan& plan, unsigned c,
                                       std::size_t clearing_budget, std::uint64_t seed);

private:
    GroupPlan plan_;
    unsigned c_ = 2;
    unsigned degree_ = 3;
    std::uint64_t seed_ = 0;
    std::size_t clearing_buckets_ = 0;
    std::vector<MatrixRow> rows_;
    std::vector<std::uint32_t> stage_row0_;  // first row of each stage
    std::vector<std::vector<std::uint32_t>> bucket_columns_;
    std::vector<std::array<std::uint32_t, 3>> column_buckets_;
};

// clearing_budget = 0 selects the default bucket count 6*ceil(sqrt(k)).
EncodingMatrix build_matrix(const GroupPlan& plan, unsigned c,
                            std::size_t clearing_budget, std::uint64_t seed);

std::size_t default_clearing_buckets(std::size_t k);

// y = A x in double precision.
std::vector<cplx> encode(const EncodingMatrix& A, const SparseSignal& x);

} // namespace csenergy

#endif
