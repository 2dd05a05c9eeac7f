#include "csenergy/harness.hpp"
#include "csenergy/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace csenergy {

namespace {

constexpr const char* kSchemaTag = "# csenergy-trials v1";

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
    SplitRng root(cfg.base_seed);
    return root.split(n).split(cfg.algorithm == Algorithm::CA ? 1 : 2)
        .split(cfg.layout == LayoutKind::Distributed ? 1 : 2)
        .split(trial).next_u64();
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string pack_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << '|';
        os << v[i];
    }
    return os.str();
}

std::string pack_sizes(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << '|';
        os << v[i];
    }
    return os.str();
}

template <typename T, typename F>
std::vector<T> unpack(const std::string& s, F parse) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '|')) {
        if (!tok.empty()) out.push_back(parse(tok));
    }
    return out;
}

} // namespace

std::size_t ExperimentConfig::k_of(std::size_t n) const {
    double k = std::ceil(std::pow(static_cast<double>(n), 1.0 - beta));
    return static_cast<std::size_t>(k);
}

std::size_t worker_count() {
    if (const char* env = std::getenv("CSENERGY_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial_index) {
    auto t0 = std::chrono::steady_clock::now();
    const std::size_t k = cfg.k_of(n);
    const std::uint64_t seed = trial_seed(cfg, n, trial_index);
    SplitRng derive(seed);
    const std::uint64_t sig_seed = derive.split(1).next_u64();
    const std::uint64_t plan_seed = derive.split(2).next_u64();
    const std::uint64_t mat_seed = derive.split(3).next_u64();

    SparseSignal sig = gen_combinatorial(n, k, cfg.U, sig_seed);
    GroupPlan plan = cfg.algorithm == Algorithm::CA
                         ? plan_ca_groups(n, k, cfg.C, cfg.growth)
                         : plan_sa_groups(n, k, cfg.C, cfg.growth, plan_seed);
    EncodingMatrix A = build_matrix(plan, cfg.effective_c(), 0, mat_seed);
    CircuitLayout layout = layout_for(plan, A, cfg.layout, cfg.rho);
    std::vector<cplx> y = encode(A, sig);

    DecodeOptions opt;
    opt.spec.norm_order = 1.0;
    opt.spec.precision_bits = cfg.Q;
    opt.tag_bits = cfg.scalar_bits ? cfg.scalar_bits - static_cast<unsigned>(cfg.Q) : 8u;
    opt.magnitude_floor = cfg.U * kMagnitudeFloorFraction / 2.0;

    DecodeResult res = cfg.algorithm == Algorithm::CA ? ca_decode(y, A, plan, layout, opt)
                                                      : sa_decode(y, A, plan, layout, opt);

    TrialRecord rec;
    rec.n = n;
    rec.k = k;
    rec.m = A.m();
    rec.algorithm = cfg.algorithm;
    rec.layout = cfg.layout;
    rec.seed = seed;
    rec.support_size = sig.support.size();
    rec.bit_meters_total = res.ledger.total;
    rec.stage_meters.assign(plan.stage_count(), 0.0);
    for (std::size_t s = 0; s < res.ledger.per_stage.size() && s < rec.stage_meters.size(); ++s) {
        rec.stage_meters[s] = res.ledger.per_stage[s];
    }
    rec.stage_resolved.clear();
    std::size_t resolved_total = 0;
    for (const auto& st : res.stage_stats) {
        rec.stage_resolved.push_back(st.resolved_entries);
        resolved_total += st.resolved_entries;
    }
    rec.resolved_pre_clearing = res.resolved_before_clearing;
    rec.unresolved_count = sig.support.size() > resolved_total
                               ? sig.support.size() - resolved_total
                               : 0;
    rec.block_error = block_error_flag(sig, res.estimate, opt.spec);
    rec.c0 = instance_c0(sig, opt.spec.norm_order);
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<TrialRecord> sweep(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("sweep: trials < 1");
    struct Task { std::size_t n, trial, slot; };
    std::vector<Task> tasks;
    std::size_t slot = 0;
    for (std::size_t n : cfg.n_grid) {
        for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, t, slot++});
    }
    std::vector<TrialRecord> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            out[tasks[i].slot] = run_trial(cfg, tasks[i].n, tasks[i].trial);
        }
    };
    std::size_t workers = std::min(worker_count(), std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;  // slot order == (n, trial) order: schedule independent
}

void write_csv(const std::vector<TrialRecord>& records, std::ostream& os) {
    os << kSchemaTag << "\n";
    os << "n,k,m,algorithm,layout,seed,support_size,bit_meters_total,stage_meters,"
          "stage_resolved,resolved_pre_clearing,unresolved_count,block_error,c0\n";
    os.precision(17);
    for (const auto& r : records) {
        os << r.n << ',' << r.k << ',' << r.m << ','
           << (r.algorithm == Algorithm::CA ? "CA" : "SA") << ','
           << (r.layout == LayoutKind::Distributed ? "distributed" : "centralized") << ','
           << r.seed << ',' << r.support_size << ',' << r.bit_meters_total << ','
           << pack_doubles(r.stage_meters) << ',' << pack_sizes(r.stage_resolved) << ','
           << r.resolved_pre_clearing << ',' << r.unresolved_count << ','
           << (r.block_error ? 1 : 0) << ',' << r.c0 << "\n";
    }
}

std::vector<TrialRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSchemaTag) {
        throw std::runtime_error("read_csv: unknown schema version");
    }
    std::getline(is, line);  // header
    std::vector<TrialRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f;
        TrialRecord r;
        auto next = [&]() {
            if (!std::getline(ss, f, ',')) throw std::runtime_error("read_csv: short row");
            return f;
        };
        r.n = std::stoull(next());
        r.k = std::stoull(next());
        r.m = std::stoull(next());
        r.algorithm = next() == "CA" ? Algorithm::CA : Algorithm::SA;
        r.layout = next() == "distributed" ? LayoutKind::Distributed : LayoutKind::Centralized;
        r.seed = std::stoull(next());
        r.support_size = std::stoull(next());
        r.bit_meters_total = std::stod(next());
        r.stage_meters = unpack<double>(next(), [](const std::string& s) { return std::stod(s); });
        r.stage_resolved =
            unpack<std::size_t>(next(), [](const std::string& s) { return std::stoull(s); });
        r.resolved_pre_clearing = std::stoull(next());
        r.unresolved_count = std::stoull(next());
        r.block_error = next() == "1";
        r.c0 = std::stod(next());
        out.push_back(std::move(r));
    }
    return out;
}

std::string trial_to_json(const TrialRecord& r) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"n\":" << r.n << ",\"k\":" << r.k << ",\"m\":" << r.m
       << ",\"algorithm\":\"" << (r.algorithm == Algorithm::CA ? "CA" : "SA")
       << "\",\"layout\":\""
       << (r.layout == LayoutKind::Distributed ? "distributed" : "centralized")
       << "\",\"seed\":" << r.seed << ",\"support_size\":" << r.support_size
       << ",\"bit_meters_total\":" << r.bit_meters_total << ",\"stage_meters\":[";
    for (std::size_t i = 0; i < r.stage_meters.size(); ++i) {
        if (i) os << ',';
        os << r.stage_meters[i];
    }
    os << "],\"stage_resolved\":[";
    for (std::size_t i = 0; i < r.stage_resolved.size(); ++i) {
        if (i) os << ',';
        os << r.stage_resolved[i];
    }
    os << "],\"resolved_pre_clearing\":" << r.resolved_pre_clearing
       << ",\"unresolved_count\":" << r.unresolved_count
       << ",\"block_error\":" << (r.block_error ? "true" : "false")
       << ",\"c0\":" << r.c0 << ",\"wall_time_ms\":" << r.wall_time_ms << "}";
    return os.str();
}

FitResult fit_scaling(const std::vector<TrialRecord>& records, FitAxis axis) {
    // group by (n, k)
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<double>>> groups;
    for (const auto& r : records) {
        auto key = std::make_pair(r.n, r.k);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {r.bit_meters_total}});
        } else {
            it->second.push_back(r.bit_meters_total);
        }
    }
    if (groups.size() < 3) throw std::invalid_argument("fit_scaling: fewer than 3 grid points");

    std::vector<double> xs, ys;
    for (auto& [key, vals] : groups) {
        double x = axis == FitAxis::NK
                       ? static_cast<double>(key.first) * static_cast<double>(key.second)
                       : static_cast<double>(key.first);
        double med = median_of(std::move(vals));
        if (med <= 0.0 || x <= 0.0) throw std::invalid_argument("fit_scaling: nonpositive data");
        xs.push_back(std::log(x));
        ys.push_back(std::log(med));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double N = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    FitResult fit;
    fit.slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / N;
    double ss_res = 0, ss_tot = 0, ybar = sy / N;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

std::vector<BoundComparison> compare_bound(const std::vector<TrialRecord>& records,
                                           int Q, double rho) {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<const TrialRecord*>>>
        groups;
    for (const auto& r : records) {
        auto key = std::make_pair(r.n, r.k);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) groups.push_back({key, {&r}});
        else it->second.push_back(&r);
    }
    std::vector<BoundComparison> out;
    for (const auto& [key, rs] : groups) {
        BoundComparison bc;
        bc.n = key.first;
        bc.k = key.second;
        bc.m = rs.front()->m;
        std::vector<double> mus, c0s;
        for (const auto* r : rs) {
            mus.push_back(r->bit_meters_total);
            c0s.push_back(r->c0);
        }
        bc.measured_median = median_of(std::move(mus));
        double c0 = median_of(std::move(c0s));

        BoundParams bp;
        bp.n = bc.n;
        bp.m = bc.m;
        bp.p = static_cast<double>(bc.k) / static_cast<double>(bc.n);
        bp.Q = Q;
        bp.eps = 1.0 / std::sqrt(static_cast<double>(bc.k));  // target error order
        bp.rho = rho;
        bp.C0 = c0;
        if (c0 <= 0.0) {
            bc.bound = 0.0;
            bc.vacuous = true;
        } else {
            BoundValue bv = lower_bound_theorem1(bp);
            bc.bound = bv.value;
            bc.vacuous = bv.vacuous;
        }
        bc.ratio = (!bc.vacuous && bc.bound > 0.0) ? bc.measured_median / bc.bound : 0.0;
        out.push_back(bc);
    }
    return out;
}

} // namespace csenergy
