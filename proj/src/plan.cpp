#include "csenergy/plan.hpp"
#include "csenergy/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csenergy {

namespace {

std::size_t regular_stage_count(std::size_t k, unsigned growth) {
    // floor(log_growth(k / log2 k)), clamped so stage 1 always exists
    double s = std::log(static_cast<double>(k) / std::log2(static_cast<double>(k))) /
               std::log(static_cast<double>(growth));
    auto fl = static_cast<long>(std::floor(s + 1e-12));
    return static_cast<std::size_t>(std::max<long>(1, fl));
}

GroupPlan make_base(std::size_t n, std::size_t k, unsigned C, unsigned growth) {
    if (k < 2) throw std::invalid_argument("group plan: k < 2");
    if (growth < 2) throw std::invalid_argument("group plan: growth factor < 2");
    if (C == 0) throw std::invalid_argument("group plan: C == 0");
    if (static_cast<std::size_t>(C) * k > n) throw std::invalid_argument("group plan: C*k > n");

    GroupPlan p;
    p.n = n;
    p.k = k;
    p.C = C;
    p.growth = growth;
    p.cells = static_cast<std::size_t>(C) * k;
    p.cell_width = (n + p.cells - 1) / p.cells;
    p.regular_stages = regular_stage_count(k, growth);
    return p;
}

} // namespace

std::size_t GroupPlan::merge_width(std::size_t stage) const {
    std::size_t w = 1;
    for (std::size_t i = 1; i < stage; ++i) w *= growth;
    return w;
}

std::size_t GroupPlan::stage_groups(std::size_t stage) const {
    std::size_t w = merge_width(stage);
    return (cells + w - 1) / w;
}

std::size_t GroupPlan::group_of(std::size_t stage, std::size_t col) const {
    if (stage == 1 || nested) return cell_of(col) / merge_width(stage);
    return sa_group_map[stage - 2][col];
}

std::size_t GroupPlan::group_size(std::size_t stage, std::size_t g) const {
    if (stage == 1 || nested) {
        auto [lo, hi] = cell_span(stage, g);
        std::size_t a = lo * cell_width, b = std::min(hi * cell_width, n);
        return b > a ? b - a : 0;
    }
    const auto& off = sa_offsets[stage - 2];
    return off[g + 1] - off[g];
}

std::vector<std::uint32_t> GroupPlan::group_columns(std::size_t stage, std::size_t g) const {
    std::vector<std::uint32_t> cols;
    if (stage == 1 || nested) {
        auto [lo, hi] = cell_span(stage, g);
        std::size_t a = lo * cell_width, b = std::min(hi * cell_width, n);
        cols.reserve(b > a ? b - a : 0);
        for (std::size_t c = a; c < b; ++c) cols.push_back(static_cast<std::uint32_t>(c));
    } else {
        const auto& off = sa_offsets[stage - 2];
        const auto& ord = sa_order[stage - 2];
        cols.assign(ord.begin() + off[g], ord.begin() + off[g + 1]);
    }
    return cols;
}

std::pair<std::size_t, std::size_t> GroupPlan::cell_span(std::size_t stage, std::size_t g) const {
    std::size_t w = merge_width(stage);
    if (stage == 1 || nested) {
        return {g * w, std::min(g * w + w, cells)};
    }
    // shotgun: the neighborhood of two target groups
    std::size_t lo = (g / 2) * 2 * w;
    return {std::min(lo, cells), std::min(lo + 2 * w, cells)};
}

std::size_t GroupPlan::home_cell(std::size_t stage, std::size_t g) const {
    auto [lo, hi] = cell_span(stage, g);
    if (hi <= lo) return lo;
    return lo + (hi - lo) / 2;
}

std::size_t GroupPlan::total_regular_groups() const {
    std::size_t t = 0;
    for (std::size_t i = 1; i <= regular_stages; ++i) t += stage_groups(i);
    return t;
}

GroupPlan plan_ca_groups(std::size_t n, std::size_t k, unsigned C, unsigned phi) {
    GroupPlan p = make_base(n, k, C, phi);
    p.nested = true;
    return p;
}

GroupPlan plan_sa_groups(std::size_t n, std::size_t k, unsigned C, unsigned psi,
                         std::uint64_t seed) {
    GroupPlan p = make_base(n, k, C, psi);
    p.nested = false;
    p.seed = seed;
    SplitRng root(seed);

    for (std::size_t stage = 2; stage <= p.regular_stages; ++stage) {
        std::size_t w = p.merge_width(stage);
        std::size_t groups = p.stage_groups(stage);
        std::vector<std::uint32_t> order;
        order.reserve(p.n);
        std::vector<std::uint32_t> offsets(groups + 1, 0);
        std::vector<std::uint32_t> gmap(p.n, 0);

        std::size_t g = 0;
        for (std::size_t nb = 0; g < groups; ++nb) {
            std::size_t gin = std::min<std::size_t>(2, groups - g);  // groups in this neighborhood
            std::size_t cell_lo = nb * 2 * w;
            std::size_t cell_hi = std::min(cell_lo + gin * w, p.cells);
            std::size_t a = cell_lo * p.cell_width;
            std::size_t b = std::min(cell_hi * p.cell_width, p.n);

            std::vector<std::uint32_t> res;
            res.reserve(b - a);
            for (std::size_t c = a; c < b; ++c) res.push_back(static_cast<std::uint32_t>(c));
            SplitRng rng = root.split(stage * 1024 + nb);
            for (std::size_t i = res.size(); i > 1; --i) {
                std::size_t j = static_cast<std::size_t>(rng.next_below(i));
                std::swap(res[i - 1], res[j]);
            }

            std::size_t base = 0;
            for (std::size_t t = 0; t < gin; ++t) {
                std::size_t share = (res.size() + gin - 1 - t) / gin;  // near-equal split
                for (std::size_t i = 0; i < share; ++i) {
                    gmap[res[base + i]] = static_cast<std::uint32_t>(g + t);
                    order.push_back(res[base + i]);
                }
                offsets[g + t + 1] = static_cast<std::uint32_t>(order.size());
                base += share;
            }
            g += gin;
        }
        // groups list their columns sorted, so plans serialize canonically
        for (std::size_t gg = 0; gg < groups; ++gg) {
            std::sort(order.begin() + offsets[gg], order.begin() + offsets[gg + 1]);
        }
        p.sa_order.push_back(std::move(order));
        p.sa_offsets.push_back(std::move(offsets));
        p.sa_group_map.push_back(std::move(gmap));
    }
    return p;
}

} // namespace csenergy
