#ifndef CSENERGY_STENCIL_HPP
#define CSENERGY_STENCIL_HPP

#include "csenergy/layout.hpp"

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace csenergy {

// Tiling of a layout by cosets of a square sub-lattice of index lambda.
// Cells are half-open squares of side sqrt(lambda) lattice steps anchored at
// an origin; the inner part of a cell is the centered box shrunk by eta per
// side. A node on a cell boundary belongs to exactly one cell (floor
// indexing is the tie-break).
struct StencilCell {
    std::size_t m_total = 0, n_total = 0;    // input/output nodes in the outer part
    std::size_t m_inside = 0, n_inside = 0;  // inside the eta-scaled inner part
    bool non_locally_decodable = false;      // m_i <= min(2m/L, n_i)
};

struct StencilPartition {
    std::size_t lambda = 0;
    double eta = 0.0;
    std::pair<long, long> origin{0, 0};  // lattice units
    std::size_t tiles_x = 0, tiles_y = 0;
    std::vector<StencilCell> cells;      // tiles_x * tiles_y entries, row-major

    std::size_t cell_count() const { return cells.size(); }
    // The quotient count (n + m)/lambda: the L that the sub-lattice radius
    // identity rho(L0) = sqrt(sigma0 (n+m) / (sigma L)) rho(L) is stated
    // with (every node hosts exactly one vector entry there).
    double lemma_L(std::size_t n_nodes, std::size_t m_nodes) const {
        return static_cast<double>(n_nodes + m_nodes) / static_cast<double>(lambda);
    }
    std::size_t inside_outputs() const;
    std::size_t total_inputs() const;
    std::size_t total_outputs() const;
};

// lambda must be a perfect square; 0 < eta < 1/2.
StencilPartition build_stencil(const CircuitLayout& layout, std::size_t lambda, double eta,
                               std::pair<long, long> origin);

// Scan every origin in one fundamental cell of the sub-lattice and return
// one maximizing the inner-part output count; the averaging argument
// guarantees the max reaches n(1-2 eta)^2.
std::pair<std::pair<long, long>, StencilPartition> scan_origins(const CircuitLayout& layout,
                                                                std::size_t lambda, double eta);

// Fraction of non-locally-decodable cells.
double nld_fraction(const StencilPartition& partition);

void dump_stencil_csv(const StencilPartition& p, std::ostream& os);

} // namespace csenergy

#endif
