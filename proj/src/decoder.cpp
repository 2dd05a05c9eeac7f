#include "csenergy/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace csenergy {

namespace {

class DecoderCore {
public:
    DecoderCore(const std::vector<cplx>& y, const EncodingMatrix& A,
                const GroupPlan& plan, const CircuitLayout& layout,
                const DecodeOptions& opt)
        : A_(A), plan_(plan), layout_(layout), opt_(opt), resid_(y) {
        if (y.size() != A.m()) throw std::invalid_argument("decode: y/A dimension mismatch");
        if (layout.inputs.size() != A.m()) throw std::invalid_argument("decode: layout/A mismatch");
        double ymax = 0.0;
        for (const auto& z : y) ymax = std::max(ymax, std::abs(z));
        scale_ = std::max(1.0, ymax);
        tol_.tau_zero = opt.tau_zero_rel * scale_;
        tol_.tau_match = opt.tau_match_rel;
        tol_.min_magnitude = opt.magnitude_floor;
        solver_ = std::make_unique<GroupSolver>(A_, tol_);

        result_.estimate.assign(plan.n, 0.0);
        result_.ledger.trace_enabled = opt.trace;
        result_.stage_stats.assign(plan.stage_count(), StageStats{});
        dirty_cell_.assign(plan.cells, 0);
        for (std::size_t c = 0; c < plan.cells; ++c) refresh_cell(c);
    }

    DecodeResult run(bool chain) {
        stage_one();
        for (std::size_t stage = 2; stage <= plan_.regular_stages; ++stage) {
            if (chain) chain_stage(stage);
            else shotgun_stage(stage);
        }
        for (std::size_t s = 0; s < plan_.regular_stages; ++s) {
            result_.resolved_before_clearing += result_.stage_stats[s].resolved_entries;
        }
        clearing();
        for (std::size_t c = 0; c < plan_.cells; ++c) {
            if (dirty_cell_[c]) result_.unresolved_cells.push_back(static_cast<std::uint32_t>(c));
        }
        return std::move(result_);
    }

private:
    std::vector<unsigned> caps() const {
        if (!opt_.stage_caps.empty()) return opt_.stage_caps;
        return default_ca_caps(plan_.regular_stages, A_.c());
    }

    bool row_dirty(std::size_t r) const { return std::abs(resid_[r]) > tol_.tau_zero; }

    bool group_rows_dirty(std::size_t stage, std::size_t g) const {
        std::size_t r0 = A_.group_row0(stage, g);
        for (unsigned t = 0; t < A_.c(); ++t)
            if (row_dirty(r0 + t)) return true;
        return false;
    }

    void refresh_cell(std::size_t cell) {
        dirty_cell_[cell] = group_rows_dirty(1, cell) ? 1 : 0;
    }

    void subtract(std::size_t col, double v) {
        for (std::size_t stage = 1; stage <= plan_.regular_stages; ++stage) {
            std::size_t r0 = A_.group_row0(stage, plan_.group_of(stage, col));
            for (unsigned t = 0; t < A_.c(); ++t) resid_[r0 + t] -= v * A_.unit(r0 + t, col);
        }
        for (std::uint32_t b : A_.column_buckets(col)) {
            std::size_t r0 = A_.group_row0(plan_.stage_count(), b);
            for (unsigned t = 0; t < A_.c(); ++t) resid_[r0 + t] -= v * A_.unit(r0 + t, col);
        }
        refresh_cell(plan_.cell_of(col));
    }

    void resolve_entries(const std::vector<SolveEntry>& entries, std::size_t stage,
                         std::size_t hub_node) {
        auto& st = result_.stage_stats[stage - 1];
        for (const auto& e : entries) {
            result_.estimate[e.col] = quantize_value(e.value, opt_.spec.precision_bits);
            record_transmission(result_.ledger, layout_.inputs[hub_node],
                                layout_.outputs[e.col], opt_.scalar_bits(), stage);
            subtract(e.col, e.value);
        }
        st.resolved_entries += entries.size();
        if (entries.size() == 1) st.singletons += 1;
    }

    std::vector<std::uint32_t> gather_rows(std::size_t stage, std::size_t g) const {
        // all dirty rows of scales 1..stage inside this group's cell span
        std::vector<std::uint32_t> rows;
        for (std::size_t sc = 1; sc <= stage; ++sc) {
            std::size_t ratio = plan_.merge_width(stage) / plan_.merge_width(sc);
            std::size_t lo = g * ratio;
            std::size_t hi = std::min(lo + ratio, plan_.stage_groups(sc));
            for (std::size_t sub = lo; sub < hi; ++sub) {
                std::size_t r0 = A_.group_row0(sc, sub);
                for (unsigned t = 0; t < A_.c(); ++t) {
                    if (row_dirty(r0 + t)) rows.push_back(static_cast<std::uint32_t>(r0 + t));
                }
            }
        }
        return rows;
    }

    std::vector<cplx> gather_resid(const std::vector<std::uint32_t>& rows) const {
        std::vector<cplx> out(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] = resid_[rows[i]];
        return out;
    }

    std::vector<std::uint32_t> cell_columns(std::size_t cell) const {
        std::vector<std::uint32_t> cols;
        std::size_t a = cell * plan_.cell_width;
        std::size_t b = std::min(a + plan_.cell_width, plan_.n);
        for (std::size_t j = a; j < b; ++j) cols.push_back(static_cast<std::uint32_t>(j));
        return cols;
    }

    void stage_one() {
        auto& st = result_.stage_stats[0];
        for (std::size_t g = 0; g < plan_.cells; ++g) {
            ++st.groups_processed;
            if (!dirty_cell_[g]) continue;
            std::size_t r0 = A_.group_row0(1, g);
            std::vector<std::uint32_t> rows;
            for (unsigned t = 0; t < A_.c(); ++t) rows.push_back(static_cast<std::uint32_t>(r0 + t));
            auto hit = solver_->solve_single(rows, gather_resid(rows), cell_columns(g), 1);
            if (hit) {
                resolve_entries(*hit, 1, layout_.hub_of(1, g));
            }
        }
        // unresolved groups hand their measurements to the covering hub
        if (plan_.regular_stages >= 2) {
            for (std::size_t g = 0; g < plan_.cells; ++g) {
                if (!dirty_cell_[g]) continue;
                ++st.forwards;
                record_transmission(result_.ledger, layout_.hub_point(1, g),
                                    layout_.hub_point(2, g / plan_.growth),
                                    static_cast<std::uint64_t>(A_.c()) * opt_.scalar_bits(), 1);
            }
        }
    }

    void chain_stage(std::size_t stage) {
        auto& st = result_.stage_stats[stage - 1];
        const auto cap = caps();
        const unsigned s_cap = cap[stage - 1];
        const std::size_t groups = plan_.stage_groups(stage);

        for (std::size_t g = 0; g < groups; ++g) {
            ++st.groups_processed;
            auto [clo, chi] = plan_.cell_span(stage, g);
            std::vector<std::size_t> dirt;
            for (std::size_t c = clo; c < chi; ++c)
                if (dirty_cell_[c]) dirt.push_back(c);
            if (dirt.empty()) continue;

            std::vector<std::uint32_t> rows = gather_rows(stage, g);
            if (rows.size() < 3) continue;
            std::vector<cplx> rv = gather_resid(rows);

            if (dirt.size() == 1) {
                unsigned s_max = std::min<unsigned>(s_cap, static_cast<unsigned>(rows.size()) - 2);
                auto hit = solver_->solve_single(rows, rv, cell_columns(dirt[0]), s_max,
                                                 opt_.enum3_limit);
                if (hit) resolve_entries(*hit, stage, layout_.hub_of(stage, g));
            } else if (dirt.size() == 2 && stage >= 3) {
                unsigned total_max = std::min<unsigned>(2 * (stage - 1), 6);
                total_max = std::min<unsigned>(total_max, static_cast<unsigned>(rows.size()) - 2);
                // side-private rows: scales whose group touches one cell only
                auto private_rows = [&](std::size_t mine, std::size_t other) {
                    std::vector<std::uint32_t> pr;
                    for (std::uint32_t r : rows) {
                        const MatrixRow& mr = A_.row(r);
                        auto [lo, hi] = plan_.cell_span(mr.stage, mr.group);
                        if (mine >= lo && mine < hi && (other < lo || other >= hi))
                            pr.push_back(r);
                    }
                    return pr;
                };
                auto hit = solver_->solve_two_cell(rows, rv, cell_columns(dirt[0]),
                                                   cell_columns(dirt[1]),
                                                   private_rows(dirt[0], dirt[1]),
                                                   private_rows(dirt[1], dirt[0]), total_max);
                if (hit) resolve_entries(*hit, stage, layout_.hub_of(stage, g));
            }
        }
        if (stage < plan_.regular_stages) {
            for (std::size_t g = 0; g < groups; ++g) {
                auto [clo, chi] = plan_.cell_span(stage, g);
                bool dirty = false;
                for (std::size_t c = clo; c < chi; ++c) dirty |= (dirty_cell_[c] != 0);
                if (!dirty) continue;
                ++st.forwards;
                record_transmission(result_.ledger, layout_.hub_point(stage, g),
                                    layout_.hub_point(stage + 1, g / plan_.growth),
                                    static_cast<std::uint64_t>(A_.c()) * opt_.scalar_bits(), stage);
            }
        }
    }

    void shotgun_stage(std::size_t stage) {
        auto& st = result_.stage_stats[stage - 1];
        std::vector<unsigned> cap = opt_.stage_caps.empty()
                                        ? default_sa_caps(plan_.regular_stages, A_.c())
                                        : opt_.stage_caps;
        const unsigned s_cap = cap[stage - 1];
        const std::size_t groups = plan_.stage_groups(stage);

        for (std::size_t g = 0; g < groups; ++g) {
            ++st.groups_processed;
            std::size_t r0 = A_.group_row0(stage, g);
            std::vector<std::uint32_t> rows;
            for (unsigned t = 0; t < A_.c(); ++t) {
                if (row_dirty(r0 + t)) rows.push_back(static_cast<std::uint32_t>(r0 + t));
            }
            if (rows.size() < 3) continue;

            std::vector<std::uint32_t> cands;
            for (std::uint32_t col : plan_.group_columns(stage, g)) {
                if (dirty_cell_[plan_.cell_of(col)]) cands.push_back(col);
            }
            if (cands.empty()) continue;
            unsigned s_max = std::min<unsigned>(s_cap, static_cast<unsigned>(rows.size()) - 2);
            auto hit = solver_->solve_single(rows, gather_resid(rows), cands, s_max,
                                             opt_.enum3_limit);
            if (hit) resolve_entries(*hit, stage, layout_.hub_of(stage, g));
        }
    }

    void clearing() {
        const std::size_t stage = plan_.stage_count();
        auto& st = result_.stage_stats[stage - 1];
        const std::size_t B = A_.clearing_buckets();
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t b = 0; b < B; ++b) {
                std::size_t r0 = A_.group_row0(stage, b);
                ++st.groups_processed;
                bool dirty = false;
                for (unsigned t = 0; t < A_.c(); ++t) dirty |= row_dirty(r0 + t);
                if (!dirty) continue;

                // identification-phase inversion, both sign branches
                cplx yid = resid_[r0];
                double arg = std::arg(yid);
                for (int branch = 0; branch < 2 && dirty; ++branch) {
                    double theta = branch == 0 ? arg : arg + std::numbers::pi;
                    if (theta < 0) theta += 2.0 * std::numbers::pi;
                    if (theta >= std::numbers::pi) theta -= std::numbers::pi;  // sign ambiguity
                    std::size_t j = A_.invert_identification(r0, theta);
                    if (j >= plan_.n) continue;
                    const auto& bks = A_.column_buckets(j);
                    if (std::find(bks.begin(), bks.end(), b) == bks.end()) continue;

                    double num = 0.0;
                    bool ok = true;
                    for (unsigned t = 0; t < A_.c(); ++t) {
                        cplx u = A_.unit(r0 + t, j);
                        num += u.real() * resid_[r0 + t].real() + u.imag() * resid_[r0 + t].imag();
                    }
                    double v = num / static_cast<double>(A_.c());
                    if (std::abs(v) < tol_.min_magnitude) continue;
                    double thr = tol_.tau_match * scale_;
                    for (unsigned t = 0; t < A_.c() && ok; ++t) {
                        ok = std::abs(resid_[r0 + t] - v * A_.unit(r0 + t, j)) <= thr;
                    }
                    if (!ok) continue;

                    result_.estimate[j] = quantize_value(v, opt_.spec.precision_bits);
                    record_transmission(result_.ledger, layout_.inputs[r0],
                                        layout_.outputs[j], opt_.scalar_bits(), stage);
                    subtract(j, v);
                    st.resolved_entries += 1;
                    st.singletons += 1;
                    progress = true;
                    dirty = false;
                }
            }
        }
        for (std::size_t b = 0; b < B; ++b) {
            std::size_t r0 = A_.group_row0(stage, b);
            for (unsigned t = 0; t < A_.c(); ++t) {
                if (row_dirty(r0 + t)) { ++result_.unresolved_buckets; break; }
            }
        }
    }

    const EncodingMatrix& A_;
    const GroupPlan& plan_;
    const CircuitLayout& layout_;
    const DecodeOptions& opt_;
    std::vector<cplx> resid_;
    double scale_ = 1.0;
    SolveTolerances tol_;
    std::unique_ptr<GroupSolver> solver_;
    std::vector<std::uint8_t> dirty_cell_;
    DecodeResult result_;
};

} // namespace

std::vector<unsigned> default_ca_caps(std::size_t S, unsigned c) {
    std::vector<unsigned> caps(S);
    for (std::size_t i = 1; i <= S; ++i) caps[i - 1] = static_cast<unsigned>(std::min<std::size_t>(i, 5));
    // the last local stage does maximal effort before the global pass
    caps[S - 1] = std::max(caps[S - 1],
                           static_cast<unsigned>(std::min<std::size_t>(c * S - 2, 5)));
    return caps;
}

std::vector<unsigned> default_sa_caps(std::size_t S, unsigned c) {
    std::vector<unsigned> caps(S, std::min(2u, c - 2));
    caps[0] = 1;
    return caps;
}

DecodeResult ca_decode(const std::vector<cplx>& y, const EncodingMatrix& A,
                       const GroupPlan& plan, const CircuitLayout& layout,
                       const DecodeOptions& opt) {
    if (!plan.nested) throw std::invalid_argument("ca_decode: plan is not a chain plan");
    DecoderCore core(y, A, plan, layout, opt);
    return core.run(true);
}

DecodeResult sa_decode(const std::vector<cplx>& y, const EncodingMatrix& A,
                       const GroupPlan& plan, const CircuitLayout& layout,
                       const DecodeOptions& opt) {
    if (plan.nested) throw std::invalid_argument("sa_decode: plan is not a shotgun plan");
    DecoderCore core(y, A, plan, layout, opt);
    return core.run(false);
}

} // namespace csenergy
