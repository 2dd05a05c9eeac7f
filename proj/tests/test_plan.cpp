#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csenergy/plan.hpp"

#include <set>
#include <stdexcept>

using namespace csenergy;

namespace {

void check_partition(const GroupPlan& p, std::size_t stage) {
    std::vector<int> seen(p.n, 0);
    for (std::size_t g = 0; g < p.stage_groups(stage); ++g) {
        for (std::uint32_t col : p.group_columns(stage, g)) {
            REQUIRE(col < p.n);
            seen[col] += 1;
            CHECK(p.group_of(stage, col) == g);
        }
    }
    for (std::size_t c = 0; c < p.n; ++c) CHECK(seen[c] == 1);
}

} // namespace

TEST_CASE("chain plan n=8 k=2: two stage-1 blocks then clearing") {
    auto p = plan_ca_groups(8, 2, 1, 2);
    CHECK(p.regular_stages == 1);  // floor(log2(2 / log2 2)) = 1
    CHECK(p.stage_count() == 2);   // clearing is the last entry
    REQUIRE(p.stage_groups(1) == 2);
    auto g0 = p.group_columns(1, 0);
    auto g1 = p.group_columns(1, 1);
    CHECK(g0 == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(g1 == std::vector<std::uint32_t>{4, 5, 6, 7});
}

TEST_CASE("chain plan stage-1 blocks are contiguous with documented size") {
    auto p = plan_ca_groups(16, 4, 1, 2);
    CHECK(p.stage_groups(1) == 4);
    for (std::size_t g = 0; g < 4; ++g) {
        auto cols = p.group_columns(1, g);
        REQUIRE(cols.size() == 4);
        for (std::size_t i = 0; i < cols.size(); ++i) CHECK(cols[i] == g * 4 + i);
    }
}

TEST_CASE("chain merges nest: stage-(i+1) groups are exact unions") {
    auto p = plan_ca_groups(1024, 16, 1, 2);
    REQUIRE(p.regular_stages >= 2);
    for (std::size_t stage = 2; stage <= p.regular_stages; ++stage) {
        for (std::size_t g = 0; g < p.stage_groups(stage); ++g) {
            std::set<std::uint32_t> merged;
            for (std::size_t child = g * p.growth;
                 child < std::min((g + 1) * static_cast<std::size_t>(p.growth),
                                  p.stage_groups(stage - 1));
                 ++child) {
                for (auto col : p.group_columns(stage - 1, child)) merged.insert(col);
            }
            auto own = p.group_columns(stage, g);
            CHECK(std::set<std::uint32_t>(own.begin(), own.end()) == merged);
        }
        check_partition(p, stage);
    }
}

TEST_CASE("group sizes follow the merge geometry") {
    auto p = plan_ca_groups(4096, 64, 1, 2);
    for (std::size_t stage = 1; stage <= p.regular_stages; ++stage) {
        std::size_t expect = p.merge_width(stage) * p.cell_width;
        for (std::size_t g = 0; g + 1 < p.stage_groups(stage); ++g) {
            CHECK(p.group_size(stage, g) == expect);
        }
        CHECK(p.group_size(stage, p.stage_groups(stage) - 1) <= expect);
    }
}

TEST_CASE("plan rejects degenerate parameters") {
    CHECK_THROWS_AS(plan_ca_groups(16, 1, 1, 2), std::invalid_argument);    // k < 2
    CHECK_THROWS_AS(plan_ca_groups(16, 4, 8, 2), std::invalid_argument);    // C*k > n
    CHECK_THROWS_AS(plan_ca_groups(16, 4, 1, 1), std::invalid_argument);    // growth < 2
    CHECK_THROWS_AS(plan_sa_groups(16, 1, 1, 2, 5), std::invalid_argument);
}

TEST_CASE("shotgun stages partition and match the merged sizing") {
    auto p = plan_sa_groups(1024, 16, 1, 2, 99);
    for (std::size_t stage = 1; stage <= p.regular_stages; ++stage) {
        check_partition(p, stage);
        std::size_t expect = p.merge_width(stage) * p.cell_width;
        for (std::size_t g = 0; g + 1 < p.stage_groups(stage); ++g) {
            CHECK(p.group_size(stage, g) == expect);
        }
    }
}

TEST_CASE("shotgun regrouping stays inside its neighborhood") {
    auto p = plan_sa_groups(2048, 32, 1, 2, 7);
    for (std::size_t stage = 2; stage <= p.regular_stages; ++stage) {
        for (std::size_t g = 0; g < p.stage_groups(stage); ++g) {
            auto [clo, chi] = p.cell_span(stage, g);
            for (auto col : p.group_columns(stage, g)) {
                std::size_t cell = p.cell_of(col);
                CHECK(cell >= clo);
                CHECK(cell < chi);
            }
        }
    }
}

TEST_CASE("shotgun: seeds change the grouping but not the invariants") {
    auto a = plan_sa_groups(512, 16, 1, 2, 1);
    auto b = plan_sa_groups(512, 16, 1, 2, 2);
    REQUIRE(a.regular_stages >= 2);
    bool differs = false;
    for (std::size_t col = 0; col < 512; ++col) {
        differs |= a.group_of(2, col) != b.group_of(2, col);
    }
    CHECK(differs);
    check_partition(a, 2);
    check_partition(b, 2);

    auto a2 = plan_sa_groups(512, 16, 1, 2, 1);
    for (std::size_t col = 0; col < 512; ++col) {
        CHECK(a.group_of(2, col) == a2.group_of(2, col));
    }
}

TEST_CASE("shotgun degenerate merge: one group covering everything") {
    // psi = C*k collapses stage 2 into a single group = [0, n)
    auto p = plan_sa_groups(64, 4, 1, 4, 11);
    if (p.regular_stages >= 2) {
        CHECK(p.stage_groups(2) == 1);
        CHECK(p.group_columns(2, 0).size() == 64);
    }
}

TEST_CASE("stage count follows floor(log_phi(k / log2 k)) + 1") {
    CHECK(plan_ca_groups(1 << 14, 128, 1, 2).regular_stages == 4);
    CHECK(plan_ca_groups(1 << 10, 32, 1, 2).regular_stages == 2);
    CHECK(plan_ca_groups(1 << 16, 256, 1, 2).regular_stages == 5);
    // growth 4 shrinks the ladder
    CHECK(plan_ca_groups(1 << 14, 128, 1, 4).regular_stages == 2);
}

TEST_CASE("home cells stay within the group's span") {
    auto p = plan_ca_groups(4096, 64, 1, 2);
    for (std::size_t stage = 1; stage <= p.regular_stages; ++stage) {
        for (std::size_t g = 0; g < p.stage_groups(stage); ++g) {
            auto [lo, hi] = p.cell_span(stage, g);
            std::size_t home = p.home_cell(stage, g);
            CHECK(home >= lo);
            CHECK(home < hi);
        }
    }
}
