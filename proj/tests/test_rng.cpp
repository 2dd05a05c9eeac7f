#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csenergy/rng.hpp"

#include <set>
#include <vector>

using namespace csenergy;

TEST_CASE("same seed same stream") {
    SplitRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("split streams are independent of draw order") {
    SplitRng root(7);
    SplitRng s3 = root.split(3);
    root.next_u64();
    root.next_u64();
    SplitRng s3b = SplitRng(7).split(3);
    for (int i = 0; i < 10; ++i) CHECK(s3.next_u64() == s3b.next_u64());
}

TEST_CASE("uniform doubles live in [0,1) and spread out") {
    SplitRng rng(123);
    double mn = 1.0, mx = 0.0, sum = 0.0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        mn = std::min(mn, d);
        mx = std::max(mx, d);
        sum += d;
    }
    CHECK(mn < 0.01);
    CHECK(mx > 0.99);
    CHECK(sum / N == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("next_below stays in range and hits all residues") {
    SplitRng rng(9);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        auto v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}
