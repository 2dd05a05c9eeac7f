#ifndef CSENERGY_LAYOUT_HPP
#define CSENERGY_LAYOUT_HPP

#include "csenergy/matrix.hpp"
#include "csenergy/plan.hpp"

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace csenergy {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Lattice {
    double packing_radius = 1.0;  // rho; axis-aligned square lattice, spacing 2*rho
    double spacing() const { return 2.0 * packing_radius; }
    // pi*rho^2 / det = pi/4 for the square lattice
    double packing_density() const { return std::numbers::pi / 4.0; }
};

enum class LayoutKind { Distributed, Centralized };

// Node placement for one (plan, matrix-shape) pair. Input-node r stores
// measurement row r; output-node j stores entry j.
struct CircuitLayout {
    Lattice lattice;
    LayoutKind kind = LayoutKind::Distributed;
    std::vector<Point> inputs;
    std::vector<Point> outputs;

    // distributed-geometry metadata (0 for centralized)
    std::size_t cell_side = 0;   // lattice points per cell side
    std::size_t grid_w = 0, grid_h = 0;

    // stage/group -> node id of the group's first input-node
    std::vector<std::uint32_t> hub_row0;
    std::vector<std::uint32_t> hub_stage_offset;  // per stage, index into hub_row0

    std::size_t hub_of(std::size_t stage, std::size_t group) const {
        return hub_row0[hub_stage_offset[stage - 1] + group];
    }
    const Point& hub_point(std::size_t stage, std::size_t group) const {
        return inputs[hub_of(stage, group)];
    }
    Point center() const;

    void dump_csv(std::ostream& os) const;  // node_id, kind, x, y, hub tags
};

CircuitLayout layout_distributed(const GroupPlan& plan, unsigned c,
                                 std::size_t clearing_buckets, double rho);
CircuitLayout layout_centralized(const GroupPlan& plan, unsigned c,
                                 std::size_t clearing_buckets, double rho);

inline CircuitLayout layout_for(const GroupPlan& plan, const EncodingMatrix& A,
                                LayoutKind kind, double rho) {
    return kind == LayoutKind::Distributed
               ? layout_distributed(plan, A.c(), A.clearing_buckets(), rho)
               : layout_centralized(plan, A.c(), A.clearing_buckets(), rho);
}

} // namespace csenergy

#endif
