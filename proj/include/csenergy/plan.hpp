#ifndef CSENERGY_PLAN_HPP
#define CSENERGY_PLAN_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace csenergy {

// Stage-structured grouping of the n signal indices.
//
// Stage 1 splits [0, n) into C*k contiguous blocks ("cells"), one per
// stage-1 group. Later stages work on runs of growth^(i-1) cells:
//  - chain (nested) plans merge adjacent runs, so every stage-(i+1) group is
//    the exact union of `growth` stage-i groups;
//  - shotgun plans re-draw the grouping each stage: the indices resident in
//    a neighborhood of two target groups are shuffled and dealt out between
//    them. Groups stay area-local (a neighborhood spans 2*growth^(i-1)
//    cells) but membership is re-randomized per stage, which is what lets
//    two entries that collided earlier land in different groups later.
//
// The last stage entry (index regular_stages + 1) is the clearing stage; it
// has no grouping here, its measurement structure lives in EncodingMatrix.
struct GroupPlan {
    std::size_t n = 0;
    std::size_t k = 0;
    unsigned C = 1;
    unsigned growth = 2;       // phi (chain) or psi (shotgun)
    bool nested = true;
    std::uint64_t seed = 0;

    std::size_t cells = 0;       // = C*k, first-stage group count
    std::size_t cell_width = 0;  // = ceil(n / cells)
    std::size_t regular_stages = 0;  // S = max(1, floor(log_growth(k / log2 k)))

    // Shotgun stages 2..S: order[s][.] lists columns grouped contiguously,
    // offsets[s] delimits groups, group_map[s][col] -> group id.
    std::vector<std::vector<std::uint32_t>> sa_order;
    std::vector<std::vector<std::uint32_t>> sa_offsets;
    std::vector<std::vector<std::uint32_t>> sa_group_map;

    std::size_t stage_count() const { return regular_stages + 1; }
    bool is_clearing(std::size_t stage) const { return stage == stage_count(); }

    // cells per group at a regular stage (1-based)
    std::size_t merge_width(std::size_t stage) const;
    std::size_t stage_groups(std::size_t stage) const;
    std::size_t group_of(std::size_t stage, std::size_t col) const;
    std::size_t group_size(std::size_t stage, std::size_t g) const;
    std::vector<std::uint32_t> group_columns(std::size_t stage, std::size_t g) const;

    std::size_t cell_of(std::size_t col) const { return col / cell_width; }
    // [lo, hi) of cells whose area hosts this group (exact for chain plans,
    // the enclosing neighborhood for shotgun stages >= 2)
    std::pair<std::size_t, std::size_t> cell_span(std::size_t stage, std::size_t g) const;
    // cell hosting the group's input-nodes
    std::size_t home_cell(std::size_t stage, std::size_t g) const;

    std::size_t total_regular_groups() const;
};

GroupPlan plan_ca_groups(std::size_t n, std::size_t k, unsigned C, unsigned phi);
GroupPlan plan_sa_groups(std::size_t n, std::size_t k, unsigned C, unsigned psi,
                         std::uint64_t seed);

} // namespace csenergy

#endif
