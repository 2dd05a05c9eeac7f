#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csenergy/signal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace csenergy;

TEST_CASE("combinatorial: zero and full sparsity") {
    auto z = gen_combinatorial(8, 0, 1.0, 123);
    CHECK(z.support.empty());
    for (double v : z.values) CHECK(v == 0.0);

    auto f = gen_combinatorial(8, 8, 1.0, 123);
    REQUIRE(f.support.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(f.support[i] == i);
}

TEST_CASE("combinatorial: exact support size and magnitude window") {
    auto sig = gen_combinatorial(10000, 100, 1.0, 7);
    REQUIRE(sig.support.size() == 100);
    const double floor = 1.0 / 16.0;
    for (std::size_t j : sig.support) {
        double a = std::abs(sig.values[j]);
        CHECK(a >= floor);
        CHECK(a <= 1.0);
    }
    for (std::size_t i = 1; i < sig.support.size(); ++i)
        CHECK(sig.support[i] > sig.support[i - 1]);
}

TEST_CASE("combinatorial: support-exact across sizes and seeds") {
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{64}}) {
            auto sig = gen_combinatorial(256, k, 2.0, seed);
            CHECK(sig.support.size() == k);
        }
    }
}

TEST_CASE("combinatorial: rejects bad parameters") {
    CHECK_THROWS_AS(gen_combinatorial(4, 5, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_combinatorial(4, 2, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_combinatorial(4, 2, -1.0, 1), std::invalid_argument);
}

TEST_CASE("combinatorial: deterministic given seed") {
    auto a = gen_combinatorial(512, 20, 1.0, 42);
    auto b = gen_combinatorial(512, 20, 1.0, 42);
    CHECK(a.values == b.values);
    CHECK(a.support == b.support);
}

TEST_CASE("probabilistic: vanishing p gives empty support at a fixed seed") {
    auto sig = gen_probabilistic(8, 1e-12, 1.0, 31337);
    CHECK(sig.support.empty());
}

TEST_CASE("probabilistic: n=1 outcomes") {
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        auto sig = gen_probabilistic(1, 0.5, 1.0, seed);
        CHECK(sig.support.size() <= 1);
    }
}

TEST_CASE("probabilistic: rejects p outside (0,1)") {
    CHECK_THROWS_AS(gen_probabilistic(8, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_probabilistic(8, 1.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_probabilistic(8, -0.1, 1.0, 1), std::invalid_argument);
}

TEST_CASE("probabilistic: support size concentrates around np") {
    // every 1000-seed trial stays inside [k/2, 3k/2] for k = np = 100
    const std::size_t n = 100000;
    const double p = 1e-3;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        auto sig = gen_probabilistic(n, p, 1.0, 1000 + t);
        CHECK(sig.support.size() >= 50);
        CHECK(sig.support.size() <= 150);
    }
}

TEST_CASE("relative_error basics") {
    auto x = gen_combinatorial(16, 4, 1.0, 5);
    ErrorSpec q1{1.0, 8};
    CHECK(relative_error(x, x.values, q1) == 0.0);

    SparseSignal single;
    single.values = {2.0, 0.0, 0.0};
    single.support = {0};
    std::vector<double> est{1.0, 0.0, 0.0};
    CHECK(relative_error(single, est, q1) == doctest::Approx(0.5));

    SparseSignal s2;
    s2.values = {3.0, 0.0, 0.0, 0.0};
    s2.support = {0};
    std::vector<double> est2{3.0, 4.0, 0.0, 0.0};
    ErrorSpec q2{2.0, 8};
    CHECK(relative_error(s2, est2, q2) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("relative_error: q = 0 counts mismatches, q = inf is max-abs") {
    SparseSignal x;
    x.values = {1.0, 0.0, -2.0, 0.0};
    x.support = {0, 2};
    std::vector<double> est{1.0, 0.5, 0.0, 0.0};
    ErrorSpec q0{0.0, 8};
    CHECK(relative_error(x, est, q0) == doctest::Approx(1.0));  // 2 mismatches / 2 nonzeros
    ErrorSpec qi{std::numeric_limits<double>::infinity(), 8};
    CHECK(relative_error(x, est, qi) == doctest::Approx(1.0));  // max err 2 / max |x| 2
}

TEST_CASE("relative_error: zero-signal handling") {
    SparseSignal zero;
    zero.values = {0.0, 0.0};
    ErrorSpec q1{1.0, 8};
    std::vector<double> z{0.0, 0.0};
    CHECK(relative_error(zero, z, q1) == 0.0);
    std::vector<double> nz{1.0, 0.0};
    CHECK_THROWS_AS(relative_error(zero, nz, q1), std::domain_error);
    std::vector<double> short_est{0.0};
    CHECK_THROWS_AS(relative_error(zero, short_est, q1), std::invalid_argument);
}

TEST_CASE("relative_error: scale invariance") {
    auto x = gen_combinatorial(64, 8, 1.0, 9);
    std::vector<double> est = x.values;
    est[x.support[0]] += 0.25;
    est[x.support[3]] -= 0.125;
    for (double q : {1.0, 2.0}) {
        ErrorSpec spec{q, 8};
        double base = relative_error(x, est, spec);
        for (double gain : {3.0, -0.5}) {
            SparseSignal cx = x;
            std::vector<double> cest = est;
            for (auto& v : cx.values) v *= gain;
            for (auto& v : cest) v *= gain;
            CHECK(relative_error(cx, cest, spec) == doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("block_error_flag thresholds") {
    SparseSignal x;
    x.values = {1.0, 0.0};
    x.support = {0};

    ErrorSpec spec{1.0, 3};
    CHECK_FALSE(block_error_flag(x, x.values, spec));

    // relative error exactly 2^-Q sits on the non-error side
    std::vector<double> boundary{1.0 - std::ldexp(1.0, -3), 0.0};
    CHECK(relative_error(x, boundary, spec) == doctest::Approx(std::ldexp(1.0, -3)));
    CHECK_FALSE(block_error_flag(x, boundary, spec));

    ErrorSpec q1{1.0, 1};
    std::vector<double> bad{0.49, 0.0};  // relative error 0.51 > 0.5
    CHECK(block_error_flag(x, bad, q1));
}

TEST_CASE("block_error_flag monotone in Q") {
    auto x = gen_combinatorial(64, 6, 1.0, 17);
    std::vector<double> est = x.values;
    est[x.support[1]] += 0.01;
    for (int Q = 12; Q >= 2; --Q) {
        ErrorSpec hi{1.0, Q}, lo{1.0, Q - 1};
        if (!block_error_flag(x, est, hi)) {
            CHECK_FALSE(block_error_flag(x, est, lo));
        }
    }
}

TEST_CASE("quantize keeps Q significand bits") {
    for (double v : {0.7312, -0.0413, 1.0, 123.456, -3.0e-4}) {
        for (int Q : {1, 4, 8, 12}) {
            double q = quantize_value(v, Q);
            CHECK(std::abs(q - v) <= std::ldexp(1.0, -Q) * std::abs(v));
        }
    }
    CHECK(quantize_value(0.0, 8) == 0.0);
}

TEST_CASE("signal serializes to json with support pairs") {
    auto sig = gen_combinatorial(8, 2, 1.0, 3);
    auto js = sig.to_json();
    CHECK(js.find("\"n\":8") != std::string::npos);
    CHECK(js.find("combinatorial") != std::string::npos);
    CHECK(js.find("support") != std::string::npos);
}
