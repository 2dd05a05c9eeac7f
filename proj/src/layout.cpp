#include "csenergy/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace csenergy {

namespace {

// grid of 2^a x 2^b cells, a >= b, a - b <= 1, holding at least `cells`
void grid_dims(std::size_t cells, std::size_t& gw, std::size_t& gh) {
    unsigned bits = 0;
    while ((1ull << bits) < cells) ++bits;
    unsigned bx = (bits + 1) / 2, by = bits / 2;
    gw = 1ull << bx;
    gh = 1ull << by;
}

// Morton order keeps runs of consecutive cells spatially compact, so both
// chain merges and shotgun neighborhoods are near-square regions.
void morton_xy(std::size_t idx, std::size_t gw, std::size_t gh, std::size_t& x, std::size_t& y) {
    x = y = 0;
    std::size_t xb = 0, yb = 0;
    while ((1ull << xb) < gw) ++xb;
    while ((1ull << yb) < gh) ++yb;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < yb; ++i) {
        x |= ((idx >> (2 * i)) & 1) << i;
        y |= ((idx >> (2 * i + 1)) & 1) << i;
        bit = 2 * (i + 1);
    }
    // leftover high bits extend x
    std::size_t hi = idx >> bit;
    x |= hi << yb;
    (void)gh;
}

// deterministic center-out ordering of the w*w cell points
std::vector<std::pair<int, int>> center_out_order(std::size_t w) {
    std::vector<std::pair<int, int>> pts;
    pts.reserve(w * w);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) pts.emplace_back(static_cast<int>(i), static_cast<int>(j));
    double cx = (static_cast<double>(w) - 1.0) / 2.0;
    std::sort(pts.begin(), pts.end(), [cx](auto a, auto b) {
        double da = std::hypot(a.first - cx, a.second - cx);
        double db = std::hypot(b.first - cx, b.second - cx);
        if (da != db) return da < db;
        return a < b;
    });
    return pts;
}

struct HubPlacement {
    std::vector<std::vector<std::uint32_t>> per_cell_rows;  // input rows homed per cell
    std::vector<std::uint32_t> hub_row0;
    std::vector<std::uint32_t> hub_stage_offset;
};

HubPlacement assign_hubs(const GroupPlan& plan, unsigned c, std::size_t clearing_buckets) {
    HubPlacement hp;
    hp.per_cell_rows.assign(plan.cells, {});
    std::uint32_t row = 0;
    for (std::size_t stage = 1; stage <= plan.regular_stages; ++stage) {
        hp.hub_stage_offset.push_back(static_cast<std::uint32_t>(hp.hub_row0.size()));
        std::size_t groups = plan.stage_groups(stage);
        for (std::size_t g = 0; g < groups; ++g) {
            hp.hub_row0.push_back(row);
            std::size_t cell = plan.home_cell(stage, g);
            for (unsigned t = 0; t < c; ++t) hp.per_cell_rows[cell].push_back(row++);
        }
    }
    // clearing rows live in a dedicated block, recorded as hubs of stage S+1
    hp.hub_stage_offset.push_back(static_cast<std::uint32_t>(hp.hub_row0.size()));
    for (std::size_t b = 0; b < clearing_buckets; ++b) {
        hp.hub_row0.push_back(row);
        row += c;
    }
    return hp;
}

} // namespace

Point CircuitLayout::center() const {
    double sx = 0, sy = 0;
    for (const auto& p : outputs) { sx += p.x; sy += p.y; }
    std::size_t n = outputs.size();
    return n ? Point{sx / n, sy / n} : Point{};
}

CircuitLayout layout_distributed(const GroupPlan& plan, unsigned c,
                                 std::size_t clearing_buckets, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("layout: rho <= 0");

    CircuitLayout L;
    L.lattice.packing_radius = rho;
    L.kind = LayoutKind::Distributed;
    const double sp = L.lattice.spacing();

    HubPlacement hp = assign_hubs(plan, c, clearing_buckets);
    L.hub_row0 = hp.hub_row0;
    L.hub_stage_offset = hp.hub_stage_offset;

    std::size_t max_load = 0;
    for (std::size_t cc = 0; cc < plan.cells; ++cc) {
        std::size_t outs = std::min(plan.cell_width, plan.n - std::min(plan.n, cc * plan.cell_width));
        max_load = std::max(max_load, outs + hp.per_cell_rows[cc].size());
    }
    std::size_t w = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(max_load))));
    w = std::max<std::size_t>(w, 1);
    L.cell_side = w;
    grid_dims(plan.cells, L.grid_w, L.grid_h);

    const std::size_t m = (plan.total_regular_groups() + clearing_buckets) * c;
    L.inputs.assign(m, Point{});
    L.outputs.assign(plan.n, Point{});

    // the clearing block is a strip of rows inserted across the middle of
    // the grid; its resolved values travel O(sqrt n) either way, the central
    // spot just keeps the constant small
    std::size_t crows = clearing_buckets * c;
    std::size_t bw = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(crows))));
    bw = std::max<std::size_t>(bw, 1);
    std::size_t bh = (crows + bw - 1) / bw;
    const std::size_t mid_row = L.grid_h / 2;

    auto order = center_out_order(w);
    for (std::size_t cell = 0; cell < plan.cells; ++cell) {
        std::size_t cx, cy;
        morton_xy(cell, L.grid_w, L.grid_h, cx, cy);
        double ox = static_cast<double>(cx * w) * sp;
        double oy = static_cast<double>(cy * w + (cy >= mid_row ? bh + 1 : 0)) * sp;
        std::size_t slot = 0;
        for (std::uint32_t r : hp.per_cell_rows[cell]) {
            L.inputs[r] = {ox + order[slot].first * sp, oy + order[slot].second * sp};
            ++slot;
        }
        std::size_t a = cell * plan.cell_width;
        std::size_t b = std::min(a + plan.cell_width, plan.n);
        for (std::size_t j = a; j < b; ++j) {
            L.outputs[j] = {ox + order[slot].first * sp, oy + order[slot].second * sp};
            ++slot;
        }
    }

    double by0 = static_cast<double>(mid_row * w) * sp;
    double bx0 = std::floor((static_cast<double>(L.grid_w * w) -
                             static_cast<double>(bw)) / 2.0) * sp;
    if (bx0 < 0.0) bx0 = 0.0;
    std::size_t first = plan.total_regular_groups() * c;
    for (std::size_t t = 0; t < crows; ++t) {
        L.inputs[first + t] = {bx0 + static_cast<double>(t % bw) * sp,
                               by0 + static_cast<double>(t / bw) * sp};
    }
    return L;
}

CircuitLayout layout_centralized(const GroupPlan& plan, unsigned c,
                                 std::size_t clearing_buckets, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("layout: rho <= 0");

    CircuitLayout L;
    L.lattice.packing_radius = rho;
    L.kind = LayoutKind::Centralized;
    const double sp = L.lattice.spacing();

    HubPlacement hp = assign_hubs(plan, c, clearing_buckets);
    L.hub_row0 = hp.hub_row0;
    L.hub_stage_offset = hp.hub_stage_offset;

    const std::size_t m = (plan.total_regular_groups() + clearing_buckets) * c;
    const std::size_t total = m + plan.n;

    // enumerate lattice points of a centered square big enough for all
    // nodes, sorted by radius: inputs claim the central disk, outputs the
    // surrounding annulus
    std::size_t half = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(total)))) / 2 + 2;
    std::vector<std::pair<double, std::pair<int, int>>> pts;
    pts.reserve((2 * half + 1) * (2 * half + 1));
    for (int ix = -static_cast<int>(half); ix <= static_cast<int>(half); ++ix) {
        for (int iy = -static_cast<int>(half); iy <= static_cast<int>(half); ++iy) {
            pts.push_back({std::hypot(ix, iy), {ix, iy}});
        }
    }
    std::sort(pts.begin(), pts.end());
    if (pts.size() < total) throw std::logic_error("layout_centralized: point budget");

    L.inputs.assign(m, Point{});
    L.outputs.assign(plan.n, Point{});
    for (std::size_t r = 0; r < m; ++r) {
        L.inputs[r] = {pts[r].second.first * sp, pts[r].second.second * sp};
    }
    for (std::size_t j = 0; j < plan.n; ++j) {
        L.outputs[j] = {pts[m + j].second.first * sp, pts[m + j].second.second * sp};
    }
    return L;
}

void CircuitLayout::dump_csv(std::ostream& os) const {
    os << "node_id,kind,x,y\n";
    os.precision(17);
    for (std::size_t r = 0; r < inputs.size(); ++r) {
        os << r << ",in," << inputs[r].x << "," << inputs[r].y << "\n";
    }
    for (std::size_t j = 0; j < outputs.size(); ++j) {
        os << j << ",out," << outputs[j].x << "," << outputs[j].y << "\n";
    }
}

} // namespace csenergy
