#include "csenergy/matrix.hpp"
#include "csenergy/rng.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace csenergy {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27; z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

// stateless uniform [0,1) keyed on (seed, row, col)
double keyed_uniform(std::uint64_t seed, std::uint64_t r, std::uint64_t j) {
    std::uint64_t h = mix64(seed ^ mix64(r * 0x9e3779b97f4a7c15ull + j + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

} // namespace

std::size_t default_clearing_buckets(std::size_t k) {
    return 6 * static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
}

EncodingMatrix build_matrix(const GroupPlan& plan, unsigned c,
                            std::size_t clearing_budget, std::uint64_t seed) {
    if (c < 2) throw std::invalid_argument("build_matrix: c < 2 (ratio test needs >= 2 phases)");

    EncodingMatrix A;
    A.plan_ = plan;
    A.c_ = c;
    A.seed_ = seed;
    A.clearing_buckets_ = clearing_budget ? clearing_budget : default_clearing_buckets(plan.k);
    if (A.clearing_buckets_ < A.degree_) A.clearing_buckets_ = A.degree_;

    const std::size_t S = plan.regular_stages;
    A.stage_row0_.assign(S + 2, 0);
    for (std::size_t stage = 1; stage <= S; ++stage) {
        A.stage_row0_[stage] = static_cast<std::uint32_t>(A.rows_.size());
        std::size_t groups = plan.stage_groups(stage);
        for (std::size_t g = 0; g < groups; ++g) {
            for (unsigned t = 0; t < c; ++t) {
                A.rows_.push_back({static_cast<std::uint32_t>(stage),
                                   static_cast<std::uint32_t>(g), t});
            }
        }
    }
    A.stage_row0_[S + 1] = static_cast<std::uint32_t>(A.rows_.size());
    const std::size_t B = A.clearing_buckets_;
    for (std::size_t b = 0; b < B; ++b) {
        for (unsigned t = 0; t < c; ++t) {
            A.rows_.push_back({static_cast<std::uint32_t>(S + 1),
                               static_cast<std::uint32_t>(b), t});
        }
    }

    // d-left-regular clearing graph over all n columns
    A.bucket_columns_.assign(B, {});
    A.column_buckets_.assign(plan.n, {});
    SplitRng groot = SplitRng(seed).split(0xC1EA11);
    for (std::size_t j = 0; j < plan.n; ++j) {
        SplitRng rng = groot.split(j);
        std::array<std::uint32_t, 3> bs{};
        for (unsigned t = 0; t < A.degree_; ++t) {
            std::uint32_t b;
            bool dup;
            do {
                b = static_cast<std::uint32_t>(rng.next_below(B));
                dup = false;
                for (unsigned u = 0; u < t; ++u) dup |= (bs[u] == b);
            } while (dup && B >= A.degree_);
            bs[t] = b;
        }
        A.column_buckets_[j] = bs;
        for (unsigned t = 0; t < A.degree_; ++t) {
            A.bucket_columns_[bs[t]].push_back(static_cast<std::uint32_t>(j));
        }
    }
    return A;
}

std::size_t EncodingMatrix::group_row0(std::size_t stage, std::size_t group) const {
    return stage_row0_[stage] + group * c_;
}

double EncodingMatrix::phase(std::size_t r, std::size_t col) const {
    const MatrixRow& row = rows_[r];
    if (row.kind == 0) {
        // pi * r * j / (2 n^2), 1-based indices
        double nn = static_cast<double>(plan_.n);
        return std::numbers::pi * static_cast<double>(r + 1) *
               static_cast<double>(col + 1) / (2.0 * nn * nn);
    }
    return keyed_uniform(seed_, r, col) * std::numbers::pi / 2.0;
}

bool EncodingMatrix::covers(std::size_t r, std::size_t col) const {
    const MatrixRow& row = rows_[r];
    if (row.stage <= plan_.regular_stages) {
        return plan_.group_of(row.stage, col) == row.group;
    }
    const auto& bs = column_buckets_[col];
    return bs[0] == row.group || bs[1] == row.group || bs[2] == row.group;
}

std::size_t EncodingMatrix::invert_identification(std::size_t r, double theta) const {
    double nn = static_cast<double>(plan_.n);
    double j1 = theta * 2.0 * nn * nn / (std::numbers::pi * static_cast<double>(r + 1));
    if (j1 < 0.5) return plan_.n;  // out of range sentinel
    auto j = static_cast<std::size_t>(std::llround(j1));
    return (j >= 1 && j <= plan_.n) ? j - 1 : plan_.n;
}

std::vector<std::uint32_t> EncodingMatrix::row_columns(std::size_t r) const {
    const MatrixRow& row = rows_[r];
    if (row.stage <= plan_.regular_stages) {
        return plan_.group_columns(row.stage, row.group);
    }
    return bucket_columns_[row.group];
}

void EncodingMatrix::serialize(std::ostream& os) const {
    os << "{\"n\":" << n() << ",\"m\":" << m() << ",\"c\":" << c_
       << ",\"stages\":" << plan_.regular_stages
       << ",\"clearing_buckets\":" << clearing_buckets_
       << ",\"seed\":" << seed_ << "}\n";
    os << "row,col,phase\n";
    os.precision(17);
    for (std::size_t r = 0; r < m(); ++r) {
        for (std::uint32_t col : row_columns(r)) {
            os << r << "," << col << "," << phase(r, col) << "\n";
        }
    }
}

std::vector<cplx> encode(const EncodingMatrix& A, const SparseSignal& x) {
    if (x.n() != A.n()) throw std::invalid_argument("encode: dimension mismatch");
    std::vector<cplx> y(A.m(), cplx{0.0, 0.0});
    const GroupPlan& plan = A.plan();
    for (std::size_t j : x.support) {
        const double v = x.values[j];
        for (std::size_t stage = 1; stage <= plan.regular_stages; ++stage) {
            std::size_t r0 = A.group_row0(stage, plan.group_of(stage, j));
            for (unsigned t = 0; t < A.c(); ++t) y[r0 + t] += v * A.unit(r0 + t, j);
        }
        for (std::uint32_t b : A.column_buckets(j)) {
            std::size_t r0 = A.group_row0(plan.stage_count(), b);
            for (unsigned t = 0; t < A.c(); ++t) y[r0 + t] += v * A.unit(r0 + t, j);
        }
    }
    return y;
}

} // namespace csenergy
