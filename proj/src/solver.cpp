#include "csenergy/solver.hpp"
#include "csenergy/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace csenergy {

namespace {

double inf_norm(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

// dense s x s symmetric solve, row-major; returns false when singular
bool solve_sym(std::vector<double>& G, std::vector<double>& h, std::size_t s) {
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t piv = i;
        for (std::size_t r = i + 1; r < s; ++r)
            if (std::abs(G[r * s + i]) > std::abs(G[piv * s + i])) piv = r;
        if (std::abs(G[piv * s + i]) < 1e-12) return false;
        if (piv != i) {
            for (std::size_t c = 0; c < s; ++c) std::swap(G[i * s + c], G[piv * s + c]);
            std::swap(h[i], h[piv]);
        }
        for (std::size_t r = i + 1; r < s; ++r) {
            double f = G[r * s + i] / G[i * s + i];
            for (std::size_t c = i; c < s; ++c) G[r * s + c] -= f * G[i * s + c];
            h[r] -= f * h[i];
        }
    }
    for (std::size_t i = s; i-- > 0;) {
        double acc = h[i];
        for (std::size_t c = i + 1; c < s; ++c) acc -= G[i * s + c] * h[c];
        h[i] = acc / G[i * s + i];
    }
    return true;
}

} // namespace

DetectResult detect_singleton(const std::vector<cplx>& y,
                              const std::vector<std::pair<std::uint32_t, std::vector<double>>>& columns,
                              int precision_bits, const SolveTolerances& tol) {
    DetectResult out;
    double ymax = inf_norm(y);
    if (ymax <= tol.tau_zero) {
        out.kind = DetectKind::Zero;
        return out;
    }
    const double thr = tol.tau_match * std::max(1.0, ymax);
    std::size_t hits = 0;
    for (const auto& [col, phases] : columns) {
        double num = 0.0;
        for (std::size_t r = 0; r < y.size(); ++r) {
            num += y[r].real() * std::cos(phases[r]) + y[r].imag() * std::sin(phases[r]);
        }
        double b = num / static_cast<double>(y.size());
        if (tol.min_magnitude > 0.0 && std::abs(b) < tol.min_magnitude) continue;
        double resid = 0.0;
        for (std::size_t r = 0; r < y.size(); ++r) {
            cplx u{std::cos(phases[r]), std::sin(phases[r])};
            resid = std::max(resid, std::abs(y[r] - b * u));
        }
        if (resid <= thr) {
            ++hits;
            if (hits > 1) break;  // ambiguous: treat as Multi
            out.index = col;
            out.value = quantize_value(b, precision_bits);
        }
    }
    out.kind = (hits == 1) ? DetectKind::Singleton : DetectKind::Multi;
    return out;
}

// ---------------------------------------------------------------------------

struct GroupSolver::Table {
    std::vector<std::uint32_t> rows;
    std::vector<cplx> y;
    std::vector<std::uint32_t> cands;
    std::vector<cplx> U;  // cands x rows
    std::vector<std::size_t> verif;  // row positions with kind >= 1
    std::size_t fit0 = 0, fit1 = 1;  // row pair used for exact fits
    double thr = 0.0;

    std::size_t R() const { return rows.size(); }
    std::size_t C() const { return cands.size(); }
    const cplx* u(std::size_t ci) const { return &U[ci * rows.size()]; }
};

namespace {

GroupSolver::Table build_table(const EncodingMatrix& A, const SolveTolerances& tol,
                               const std::vector<std::uint32_t>& rows,
                               const std::vector<cplx>& resid,
                               const std::vector<std::uint32_t>& cands) {
    GroupSolver::Table T;
    T.rows = rows;
    T.y = resid;
    T.cands = cands;
    T.U.resize(cands.size() * rows.size());
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            T.U[ci * rows.size() + ri] = A.entry(rows[ri], cands[ci]);
        }
    }
    std::size_t first_id = rows.size();
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        if (A.row(rows[ri]).kind >= 1) T.verif.push_back(ri);
        else if (first_id == rows.size()) first_id = ri;
    }
    // exact fits pair one identification row with one verification row so
    // the 2x2 systems stay well conditioned (identification phases of
    // nearby columns are almost parallel)
    T.fit0 = first_id < rows.size() ? first_id : 0;
    T.fit1 = !T.verif.empty() ? T.verif.front() : (T.fit0 + 1) % std::max<std::size_t>(rows.size(), 1);
    if (T.fit1 == T.fit0) T.fit1 = (T.fit0 + 1) % std::max<std::size_t>(rows.size(), 1);
    T.thr = tol.tau_match * std::max(1.0, inf_norm(resid));
    return T;
}

} // namespace

bool GroupSolver::is_zero(const std::vector<cplx>& resid) const {
    return inf_norm(resid) <= tol_.tau_zero;
}

bool GroupSolver::verify(const Table& T, const std::vector<std::uint32_t>& picks,
                         std::vector<double>& values) const {
    const std::size_t s = picks.size(), R = T.R();
    std::vector<double> G(s * s, 0.0), h(s, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
        const cplx* ua = T.u(picks[a]);
        for (std::size_t b = a; b < s; ++b) {
            const cplx* ub = T.u(picks[b]);
            double g = 0.0;
            for (std::size_t r = 0; r < R; ++r)
                g += ua[r].real() * ub[r].real() + ua[r].imag() * ub[r].imag();
            G[a * s + b] = G[b * s + a] = g;
        }
        double hv = 0.0;
        for (std::size_t r = 0; r < R; ++r)
            hv += ua[r].real() * T.y[r].real() + ua[r].imag() * T.y[r].imag();
        h[a] = hv;
    }
    if (!solve_sym(G, h, s)) return false;
    for (double v : h) {
        if (!std::isfinite(v)) return false;
        if (std::abs(v) < tol_.min_magnitude) return false;
    }
    for (std::size_t r = 0; r < R; ++r) {
        cplx acc = T.y[r];
        for (std::size_t a = 0; a < s; ++a) acc -= h[a] * T.u(picks[a])[r];
        if (std::abs(acc) > T.thr) return false;
    }
    values = h;
    return true;
}

std::optional<std::vector<SolveEntry>> GroupSolver::exact_pair(const Table& T) const {
    const std::size_t C = T.C(), R = T.R();
    if (C < 2 || R < 2) return std::nullopt;
    const std::size_t r0 = T.fit0, r1 = T.fit1;
    std::size_t rchk = R;  // early-exit row, first not used by the fit
    for (std::size_t r = 0; r < R; ++r) if (r != r0 && r != r1) { rchk = r; break; }

    for (std::size_t i = 0; i < C; ++i) {
        const cplx* ui = T.u(i);
        double hi0 = ui[r0].real() * T.y[r0].real() + ui[r0].imag() * T.y[r0].imag()
                   + ui[r1].real() * T.y[r1].real() + ui[r1].imag() * T.y[r1].imag();
        for (std::size_t j = i + 1; j < C; ++j) {
            const cplx* uj = T.u(j);
            double g = ui[r0].real() * uj[r0].real() + ui[r0].imag() * uj[r0].imag()
                     + ui[r1].real() * uj[r1].real() + ui[r1].imag() * uj[r1].imag();
            double det = 4.0 - g * g;
            if (det < 1e-9) continue;
            double hj = uj[r0].real() * T.y[r0].real() + uj[r0].imag() * T.y[r0].imag()
                      + uj[r1].real() * T.y[r1].real() + uj[r1].imag() * T.y[r1].imag();
            double b1 = (2.0 * hi0 - g * hj) / det;
            double b2 = (2.0 * hj - g * hi0) / det;
            if (std::abs(b1) < tol_.min_magnitude || std::abs(b2) < tol_.min_magnitude) continue;
            if (std::abs(T.y[r0] - b1 * ui[r0] - b2 * uj[r0]) > T.thr) continue;
            if (std::abs(T.y[r1] - b1 * ui[r1] - b2 * uj[r1]) > T.thr) continue;
            if (rchk < R && std::abs(T.y[rchk] - b1 * ui[rchk] - b2 * uj[rchk]) > T.thr) continue;
            std::vector<double> vals;
            std::vector<std::uint32_t> picks{static_cast<std::uint32_t>(i),
                                             static_cast<std::uint32_t>(j)};
            if (verify(T, picks, vals)) {
                return std::vector<SolveEntry>{{T.cands[i], vals[0]}, {T.cands[j], vals[1]}};
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<SolveEntry>> GroupSolver::exact_triple(const Table& T) const {
    const std::size_t C = T.C(), R = T.R();
    if (C < 3 || R < 3) return std::nullopt;
    const std::size_t r0 = T.fit0, r1 = T.fit1;
    std::size_t r2 = R;
    for (std::size_t r = 0; r < R; ++r) if (r != r0 && r != r1) { r2 = r; break; }
    if (r2 == R) return std::nullopt;

    auto dotu = [&](const cplx* a, const cplx* b) {
        return a[r0].real() * b[r0].real() + a[r0].imag() * b[r0].imag()
             + a[r1].real() * b[r1].real() + a[r1].imag() * b[r1].imag()
             + a[r2].real() * b[r2].real() + a[r2].imag() * b[r2].imag();
    };
    auto doty = [&](const cplx* a) {
        return a[r0].real() * T.y[r0].real() + a[r0].imag() * T.y[r0].imag()
             + a[r1].real() * T.y[r1].real() + a[r1].imag() * T.y[r1].imag()
             + a[r2].real() * T.y[r2].real() + a[r2].imag() * T.y[r2].imag();
    };

    std::vector<double> G(9), h(3);
    for (std::size_t i = 0; i < C; ++i) {
        const cplx* ui = T.u(i);
        double hi = doty(ui);
        for (std::size_t j = i + 1; j < C; ++j) {
            const cplx* uj = T.u(j);
            double gij = dotu(ui, uj);
            double hj = doty(uj);
            for (std::size_t l = j + 1; l < C; ++l) {
                const cplx* ul = T.u(l);
                double gil = dotu(ui, ul), gjl = dotu(uj, ul);
                G = {3.0, gij, gil, gij, 3.0, gjl, gil, gjl, 3.0};
                h = {hi, hj, doty(ul)};
                std::vector<double> Gc = G, hc = h;
                if (!solve_sym(Gc, hc, 3)) continue;
                if (std::abs(hc[0]) < tol_.min_magnitude ||
                    std::abs(hc[1]) < tol_.min_magnitude ||
                    std::abs(hc[2]) < tol_.min_magnitude) continue;
                bool ok = true;
                for (std::size_t r : {r0, r1, r2}) {
                    cplx acc = T.y[r] - hc[0] * ui[r] - hc[1] * uj[r] - hc[2] * ul[r];
                    if (std::abs(acc) > T.thr) { ok = false; break; }
                }
                if (!ok) continue;
                std::vector<double> vals;
                std::vector<std::uint32_t> picks{static_cast<std::uint32_t>(i),
                                                 static_cast<std::uint32_t>(j),
                                                 static_cast<std::uint32_t>(l)};
                if (verify(T, picks, vals)) {
                    return std::vector<SolveEntry>{{T.cands[i], vals[0]},
                                                   {T.cands[j], vals[1]},
                                                   {T.cands[l], vals[2]}};
                }
            }
        }
    }
    return std::nullopt;
}

// Beam search over supports ranked by least-squares residual. The
// verification phases live in one quadrant, so plain correlation scoring is
// too coherent to trust; ranking candidate supports by the actual fit
// quality is what makes sizes 4+ recoverable.
std::optional<std::vector<SolveEntry>> GroupSolver::greedy(const Table& T, unsigned s_min,
                                                           unsigned s_max) const {
    const std::size_t C = T.C(), R = T.R();
    if (C == 0 || R == 0) return std::nullopt;
    constexpr std::size_t kBeam = 16;

    double ynorm2 = 0.0;
    for (const auto& z : T.y) ynorm2 += std::norm(z);

    struct State {
        std::vector<std::uint32_t> picks;  // sorted
        double resid2;
    };
    std::vector<double> G, h, Gc, hc;

    // Seed with the best-fitting pairs over all rows; a true sub-pair of the
    // support ranks far better than the coherence-dominated single columns.
    std::vector<State> beam;
    if (C >= 2 && R >= 2) {
        for (std::uint32_t i = 0; i < C; ++i) {
            const cplx* ui = T.u(i);
            double gii = 0.0, hi = 0.0;
            for (std::size_t r = 0; r < R; ++r) {
                gii += std::norm(ui[r]);
                hi += ui[r].real() * T.y[r].real() + ui[r].imag() * T.y[r].imag();
            }
            for (std::uint32_t j = i + 1; j < C; ++j) {
                const cplx* uj = T.u(j);
                double gjj = 0.0, gij = 0.0, hj = 0.0;
                for (std::size_t r = 0; r < R; ++r) {
                    gjj += std::norm(uj[r]);
                    gij += ui[r].real() * uj[r].real() + ui[r].imag() * uj[r].imag();
                    hj += uj[r].real() * T.y[r].real() + uj[r].imag() * T.y[r].imag();
                }
                double det = gii * gjj - gij * gij;
                if (det < 1e-9) continue;
                double b1 = (gjj * hi - gij * hj) / det;
                double b2 = (gii * hj - gij * hi) / det;
                double r2 = ynorm2 - (b1 * hi + b2 * hj);
                if (beam.size() < 2 * kBeam) {
                    beam.push_back({{i, j}, r2});
                } else {
                    std::size_t worst = 0;
                    for (std::size_t q = 1; q < beam.size(); ++q)
                        if (beam[q].resid2 > beam[worst].resid2) worst = q;
                    if (r2 < beam[worst].resid2) beam[worst] = {{i, j}, r2};
                }
            }
        }
    }
    if (beam.empty()) beam.push_back({{}, ynorm2});

    if (s_min <= 2 && s_max >= 2) {
        std::sort(beam.begin(), beam.end(),
                  [](const State& a, const State& b) { return a.resid2 < b.resid2; });
        for (const auto& st : beam) {
            if (st.picks.size() < s_min) continue;
            std::vector<double> vals;
            if (verify(T, st.picks, vals)) {
                std::vector<SolveEntry> out;
                for (std::size_t a = 0; a < st.picks.size(); ++a)
                    out.push_back({T.cands[st.picks[a]], vals[a]});
                return out;
            }
        }
    }

    for (unsigned step = 3; step <= s_max; ++step) {
        std::vector<State> next;
        for (const auto& st : beam) {
            for (std::uint32_t ci = 0; ci < C; ++ci) {
                if (std::binary_search(st.picks.begin(), st.picks.end(), ci)) continue;
                std::vector<std::uint32_t> picks = st.picks;
                picks.insert(std::upper_bound(picks.begin(), picks.end(), ci), ci);
                const std::size_t s = picks.size();
                G.assign(s * s, 0.0);
                h.assign(s, 0.0);
                for (std::size_t a = 0; a < s; ++a) {
                    const cplx* ua = T.u(picks[a]);
                    for (std::size_t b = a; b < s; ++b) {
                        const cplx* ub = T.u(picks[b]);
                        double g = 0.0;
                        for (std::size_t r = 0; r < R; ++r)
                            g += ua[r].real() * ub[r].real() + ua[r].imag() * ub[r].imag();
                        G[a * s + b] = G[b * s + a] = g;
                    }
                    double hv = 0.0;
                    for (std::size_t r = 0; r < R; ++r)
                        hv += ua[r].real() * T.y[r].real() + ua[r].imag() * T.y[r].imag();
                    h[a] = hv;
                }
                Gc = G;
                hc = h;
                if (!solve_sym(Gc, hc, s)) continue;
                // ||y - Uv||^2 = ||y||^2 - 2 v.h + v.G v
                double quad = 0.0, lin = 0.0;
                for (std::size_t a = 0; a < s; ++a) {
                    lin += hc[a] * h[a];
                    double acc = 0.0;
                    for (std::size_t b = 0; b < s; ++b) acc += G[a * s + b] * hc[b];
                    quad += hc[a] * acc;
                }
                double r2 = ynorm2 - 2.0 * lin + quad;
                bool dup = false;
                for (const auto& q : next) dup |= (q.picks == picks);
                if (dup) continue;
                if (next.size() < kBeam) {
                    next.push_back({std::move(picks), r2});
                } else {
                    std::size_t worst = 0;
                    for (std::size_t q = 1; q < next.size(); ++q)
                        if (next[q].resid2 > next[worst].resid2) worst = q;
                    if (r2 < next[worst].resid2) next[worst] = {std::move(picks), r2};
                }
            }
        }
        if (next.empty()) break;
        beam = std::move(next);
        if (step >= s_min) {
            std::sort(beam.begin(), beam.end(),
                      [](const State& a, const State& b) { return a.resid2 < b.resid2; });
            for (const auto& st : beam) {
                std::vector<double> vals;
                if (verify(T, st.picks, vals)) {
                    std::vector<SolveEntry> out;
                    for (std::size_t a = 0; a < st.picks.size(); ++a)
                        out.push_back({T.cands[st.picks[a]], vals[a]});
                    return out;
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<SolveEntry>> GroupSolver::solve_single(
    const std::vector<std::uint32_t>& rows, const std::vector<cplx>& resid,
    const std::vector<std::uint32_t>& cands, unsigned s_max, std::size_t enum3_limit) const {
    if (rows.empty() || cands.empty()) return std::nullopt;
    Table T = build_table(*A_, tol_, rows, resid, cands);

    // s = 1: scan, it is cheap at cell scale and has no blind spots
    for (std::size_t ci = 0; ci < T.C(); ++ci) {
        const cplx* u = T.u(ci);
        double num = 0.0;
        for (std::size_t r = 0; r < T.R(); ++r)
            num += u[r].real() * T.y[r].real() + u[r].imag() * T.y[r].imag();
        double b = num / static_cast<double>(T.R());
        if (std::abs(b) < tol_.min_magnitude) continue;
        bool ok = true;
        for (std::size_t r = 0; r < T.R(); ++r) {
            if (std::abs(T.y[r] - b * u[r]) > T.thr) { ok = false; break; }
        }
        if (ok) return std::vector<SolveEntry>{{T.cands[ci], b}};
    }
    if (s_max < 2) return std::nullopt;

    if (auto hit = exact_pair(T)) return hit;
    if (s_max < 3) return std::nullopt;

    if (auto hit = greedy(T, 3, s_max)) return hit;
    if (T.C() <= enum3_limit) {
        if (auto hit = exact_triple(T)) return hit;
    }
    return std::nullopt;
}

std::optional<std::vector<SolveEntry>> GroupSolver::solve_two_cell(
    const std::vector<std::uint32_t>& rows, const std::vector<cplx>& resid,
    const std::vector<std::uint32_t>& cands_a, const std::vector<std::uint32_t>& cands_b,
    const std::vector<std::uint32_t>& private_a, const std::vector<std::uint32_t>& private_b,
    unsigned total_max) const {
    if (rows.empty()) return std::nullopt;
    std::vector<std::uint32_t> all_cands = cands_a;
    all_cands.insert(all_cands.end(), cands_b.begin(), cands_b.end());
    Table T = build_table(*A_, tol_, rows, resid, all_cands);

    // exact per-side fits on the side-private rows, joined and verified on
    // everything; the beam pass below is the fallback for mixed supports
    auto side_fits = [&](const std::vector<std::uint32_t>& priv,
                         const std::vector<std::uint32_t>& cands)
        -> std::vector<std::vector<SolveEntry>> {
        std::vector<std::vector<SolveEntry>> fits;
        if (priv.size() < 2 || cands.empty()) return fits;
        std::vector<cplx> py(priv.size());
        for (std::size_t i = 0; i < priv.size(); ++i) {
            auto it = std::find(rows.begin(), rows.end(), priv[i]);
            py[i] = resid[static_cast<std::size_t>(it - rows.begin())];
        }
        Table P = build_table(*A_, tol_, priv, py, cands);
        // singles
        for (std::size_t ci = 0; ci < P.C() && fits.size() < 8; ++ci) {
            const cplx* u = P.u(ci);
            double num = 0.0;
            for (std::size_t r = 0; r < P.R(); ++r)
                num += u[r].real() * P.y[r].real() + u[r].imag() * P.y[r].imag();
            double b = num / static_cast<double>(P.R());
            if (std::abs(b) < tol_.min_magnitude) continue;
            bool ok = true;
            for (std::size_t r = 0; r < P.R(); ++r)
                if (std::abs(P.y[r] - b * u[r]) > P.thr) { ok = false; break; }
            if (ok) fits.push_back({{P.cands[ci], b}});
        }
        // pairs (first few fits suffice; the join verifies against all rows)
        const std::size_t r0 = P.fit0, r1 = P.fit1;
        std::size_t rchk = P.R();
        for (std::size_t r = 0; r < P.R(); ++r) if (r != r0 && r != r1) { rchk = r; break; }
        const std::size_t pairs_before = fits.size();
        for (std::size_t i = 0; i < P.C() && fits.size() < 8; ++i) {
            const cplx* ui = P.u(i);
            for (std::size_t j = i + 1; j < P.C() && fits.size() < 8; ++j) {
                const cplx* uj = P.u(j);
                double g = ui[r0].real() * uj[r0].real() + ui[r0].imag() * uj[r0].imag()
                         + ui[r1].real() * uj[r1].real() + ui[r1].imag() * uj[r1].imag();
                double det = 4.0 - g * g;
                if (det < 1e-9) continue;
                double hi = ui[r0].real() * P.y[r0].real() + ui[r0].imag() * P.y[r0].imag()
                          + ui[r1].real() * P.y[r1].real() + ui[r1].imag() * P.y[r1].imag();
                double hj = uj[r0].real() * P.y[r0].real() + uj[r0].imag() * P.y[r0].imag()
                          + uj[r1].real() * P.y[r1].real() + uj[r1].imag() * P.y[r1].imag();
                double b1 = (2.0 * hi - g * hj) / det;
                double b2 = (2.0 * hj - g * hi) / det;
                if (std::abs(b1) < tol_.min_magnitude || std::abs(b2) < tol_.min_magnitude)
                    continue;
                bool ok = true;
                for (std::size_t r : {r0, r1}) {
                    if (std::abs(P.y[r] - b1 * ui[r] - b2 * uj[r]) > P.thr) { ok = false; break; }
                }
                if (ok && rchk < P.R() &&
                    std::abs(P.y[rchk] - b1 * ui[rchk] - b2 * uj[rchk]) > P.thr) ok = false;
                if (ok) fits.push_back({{P.cands[i], b1}, {P.cands[j], b2}});
            }
        }
        // triples: the three private rows (6 real equations) fit a
        // three-entry side exactly with room to reject mismatches
        if (fits.size() == pairs_before && P.R() >= 3 && P.C() >= 3 &&
            P.C() <= 256) {
            std::vector<double> G(9), h(3);
            auto dot3 = [&](const cplx* a, const cplx* b) {
                double acc = 0.0;
                for (std::size_t r = 0; r < P.R(); ++r)
                    acc += a[r].real() * b[r].real() + a[r].imag() * b[r].imag();
                return acc;
            };
            auto doty3 = [&](const cplx* a) {
                double acc = 0.0;
                for (std::size_t r = 0; r < P.R(); ++r)
                    acc += a[r].real() * P.y[r].real() + a[r].imag() * P.y[r].imag();
                return acc;
            };
            for (std::size_t i = 0; i < P.C() && fits.size() < 8; ++i) {
                const cplx* ui = P.u(i);
                double hi = doty3(ui);
                for (std::size_t j = i + 1; j < P.C() && fits.size() < 8; ++j) {
                    const cplx* uj = P.u(j);
                    double gij = dot3(ui, uj), hj = doty3(uj);
                    for (std::size_t l = j + 1; l < P.C() && fits.size() < 8; ++l) {
                        const cplx* ul = P.u(l);
                        double gil = dot3(ui, ul), gjl = dot3(uj, ul);
                        double n = static_cast<double>(P.R());
                        G = {n, gij, gil, gij, n, gjl, gil, gjl, n};
                        h = {hi, hj, doty3(ul)};
                        if (!solve_sym(G, h, 3)) continue;
                        if (std::abs(h[0]) < tol_.min_magnitude ||
                            std::abs(h[1]) < tol_.min_magnitude ||
                            std::abs(h[2]) < tol_.min_magnitude) continue;
                        bool ok3 = true;
                        for (std::size_t r = 0; r < P.R() && ok3; ++r) {
                            cplx acc = P.y[r] - h[0] * ui[r] - h[1] * uj[r] - h[2] * ul[r];
                            ok3 = std::abs(acc) <= P.thr;
                        }
                        if (ok3) {
                            fits.push_back({{P.cands[i], h[0]},
                                            {P.cands[j], h[1]},
                                            {P.cands[l], h[2]}});
                        }
                    }
                }
            }
        }
        return fits;
    };

    auto fa = side_fits(private_a, cands_a);
    auto fb = side_fits(private_b, cands_b);
    for (const auto& a : fa) {
        for (const auto& b : fb) {
            if (a.size() + b.size() > total_max) continue;
            std::vector<std::uint32_t> picks;
            for (const auto& e : a) {
                auto it = std::find(all_cands.begin(), all_cands.end(), e.col);
                picks.push_back(static_cast<std::uint32_t>(it - all_cands.begin()));
            }
            for (const auto& e : b) {
                auto it = std::find(all_cands.begin(), all_cands.end(), e.col);
                picks.push_back(static_cast<std::uint32_t>(it - all_cands.begin()));
            }
            std::sort(picks.begin(), picks.end());
            std::vector<double> vals;
            if (verify(T, picks, vals)) {
                std::vector<SolveEntry> out;
                for (std::size_t t = 0; t < picks.size(); ++t)
                    out.push_back({all_cands[picks[t]], vals[t]});
                return out;
            }
        }
    }
    return greedy(T, 2, total_max);
}

} // namespace csenergy
