#include "csenergy/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace csenergy {

namespace {

long lattice_coord(double v, double spacing) {
    return static_cast<long>(std::llround(v / spacing));
}

struct LatticeNodes {
    std::vector<std::pair<long, long>> inputs, outputs;
    long min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

LatticeNodes to_lattice(const CircuitLayout& layout) {
    LatticeNodes ln;
    double sp = layout.lattice.spacing();
    long mnx = std::numeric_limits<long>::max(), mny = mnx;
    long mxx = std::numeric_limits<long>::min(), mxy = mxx;
    auto add = [&](const Point& p, std::vector<std::pair<long, long>>& dst) {
        long x = lattice_coord(p.x, sp), y = lattice_coord(p.y, sp);
        dst.push_back({x, y});
        mnx = std::min(mnx, x); mny = std::min(mny, y);
        mxx = std::max(mxx, x); mxy = std::max(mxy, y);
    };
    for (const auto& p : layout.inputs) add(p, ln.inputs);
    for (const auto& p : layout.outputs) add(p, ln.outputs);
    ln.min_x = mnx; ln.min_y = mny; ln.max_x = mxx; ln.max_y = mxy;
    return ln;
}

} // namespace

std::size_t StencilPartition::inside_outputs() const {
    std::size_t t = 0;
    for (const auto& c : cells) t += c.n_inside;
    return t;
}

std::size_t StencilPartition::total_inputs() const {
    std::size_t t = 0;
    for (const auto& c : cells) t += c.m_total;
    return t;
}

std::size_t StencilPartition::total_outputs() const {
    std::size_t t = 0;
    for (const auto& c : cells) t += c.n_total;
    return t;
}

StencilPartition build_stencil(const CircuitLayout& layout, std::size_t lambda, double eta,
                               std::pair<long, long> origin) {
    auto W = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(lambda))));
    if (W * W != lambda) throw std::invalid_argument("build_stencil: lambda not a perfect square");
    if (!(eta > 0.0 && eta < 0.5)) throw std::invalid_argument("build_stencil: eta outside (0, 1/2)");

    LatticeNodes ln = to_lattice(layout);
    StencilPartition P;
    P.lambda = lambda;
    P.eta = eta;
    P.origin = origin;

    const long w = static_cast<long>(W);
    auto fdiv = [](long a, long b) { long q = a / b; return (a % b != 0 && (a ^ b) < 0) ? q - 1 : q; };
    long tx0 = fdiv(ln.min_x - origin.first, w), tx1 = fdiv(ln.max_x - origin.first, w);
    long ty0 = fdiv(ln.min_y - origin.second, w), ty1 = fdiv(ln.max_y - origin.second, w);
    P.tiles_x = static_cast<std::size_t>(tx1 - tx0 + 1);
    P.tiles_y = static_cast<std::size_t>(ty1 - ty0 + 1);
    P.cells.assign(P.tiles_x * P.tiles_y, StencilCell{});

    const double in_lo = eta * static_cast<double>(w);
    const double in_hi = (1.0 - eta) * static_cast<double>(w);
    auto place = [&](const std::pair<long, long>& pt, bool is_input) {
        long ox = pt.first - origin.first, oy = pt.second - origin.second;
        long cx = fdiv(ox, w) - tx0, cy = fdiv(oy, w) - ty0;
        StencilCell& cell = P.cells[static_cast<std::size_t>(cy) * P.tiles_x +
                                    static_cast<std::size_t>(cx)];
        long rx = ox - fdiv(ox, w) * w, ry = oy - fdiv(oy, w) * w;
        bool inside = rx >= in_lo && rx < in_hi && ry >= in_lo && ry < in_hi;
        if (is_input) {
            ++cell.m_total;
            if (inside) ++cell.m_inside;
        } else {
            ++cell.n_total;
            if (inside) ++cell.n_inside;
        }
    };
    for (const auto& pt : ln.inputs) place(pt, true);
    for (const auto& pt : ln.outputs) place(pt, false);

    const double m = static_cast<double>(layout.inputs.size());
    const double L = static_cast<double>(P.cells.size());
    for (auto& cell : P.cells) {
        double thr = std::min(2.0 * m / L, static_cast<double>(cell.n_total));
        cell.non_locally_decodable = static_cast<double>(cell.m_total) <= thr;
    }
    return P;
}

std::pair<std::pair<long, long>, StencilPartition> scan_origins(const CircuitLayout& layout,
                                                                std::size_t lambda, double eta) {
    auto W = static_cast<long>(std::llround(std::sqrt(static_cast<double>(lambda))));
    std::pair<long, long> best{0, 0};
    StencilPartition best_part;
    std::size_t best_inside = 0;
    bool first = true;
    for (long ux = 0; ux < W; ++ux) {
        for (long uy = 0; uy < W; ++uy) {
            StencilPartition p = build_stencil(layout, lambda, eta, {ux, uy});
            std::size_t inside = p.inside_outputs();
            if (first || inside > best_inside) {
                best = {ux, uy};
                best_inside = inside;
                best_part = std::move(p);
                first = false;
            }
        }
    }
    return {best, std::move(best_part)};
}

double nld_fraction(const StencilPartition& partition) {
    if (partition.cells.empty()) throw std::invalid_argument("nld_fraction: empty partition");
    std::size_t nld = 0;
    for (const auto& c : partition.cells) nld += c.non_locally_decodable ? 1 : 0;
    return static_cast<double>(nld) / static_cast<double>(partition.cells.size());
}

void dump_stencil_csv(const StencilPartition& p, std::ostream& os) {
    os << "cell,m_i,n_i,m_inside,n_inside,non_locally_decodable\n";
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        const auto& c = p.cells[i];
        os << i << "," << c.m_total << "," << c.n_total << "," << c.m_inside << ","
           << c.n_inside << "," << (c.non_locally_decodable ? 1 : 0) << "\n";
    }
}

} // namespace csenergy
