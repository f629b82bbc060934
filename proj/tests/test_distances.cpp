#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mpcorner/distances.hpp"
#include "oracles.hpp"

using namespace mpcorner;

namespace {

Decomposition of(std::vector<IntervalModule> summands) {
    Decomposition d;
    d.ambient_dim = 2;
    d.intervals = std::move(summands);
    return d;
}

IntervalModule rect(double x0, double y0, double x1, double y1) { return IntervalModule::rectangle({x0, y0}, {x1, y1}); }

// Interleaving of two intervals [a0, a1], [b0, b1] on the real line.
double interval_interleaving(double a0, double a1, double b0, double b1) {
    const double shift = std::max(std::abs(a0 - b0), std::abs(a1 - b1));
    return std::min(shift, std::max(0.5 * (a1 - a0), 0.5 * (b1 - b0)));
}

}  // namespace

TEST_CASE("interleaving_to_zero") {
    CHECK(interleaving_to_zero(rect(0, 0, 2, 3)) == 1.0);
    CHECK(interleaving_to_zero(IntervalModule()) == 0.0);
    CHECK(interleaving_to_zero(IntervalModule({{0, 1}, {1, 0}}, {{3, 2}, {2, 3}})) == 1.0);
}

TEST_CASE("interleaving_rect examples") {
    CHECK(interleaving_rect(rect(0, 0, 2, 2), rect(0, 0, 2, 2)) == 0.0);
    CHECK(interleaving_rect(rect(0, 0, 2, 2), rect(0.5, 0.5, 2.5, 2.5)) == 0.5);
    CHECK(interleaving_rect(rect(0, 0, 0.2, 0.2), rect(10, 10, 10.1, 10.1)) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(interleaving_rect(rect(0, 0, 2, 2), IntervalModule()) == 1.0);
    CHECK_THROWS_AS(interleaving_rect(IntervalModule({{0, 1}, {1, 0}}, {{3, 3}}), rect(0, 0, 1, 1)),
                    NotRectangleError);
}

TEST_CASE("interleaving oracle agrees with the line closed form on thin rectangles") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
        if (a0 > a1) std::swap(a0, a1);
        if (b0 > b1) std::swap(b0, b1);
        // Second axis is a common, very long interval, so only the first axis
        // constrains the interleaving.
        const auto a = rect(a0, -100, a1, 100);
        const auto b = rect(b0, -100, b1, 100);
        const double expected = interval_interleaving(a0, a1, b0, b1);
        CHECK(interleaving_oracle_rect(a, b, expected));
        if (expected > 1e-6) CHECK_FALSE(interleaving_oracle_rect(a, b, expected - 1e-6));
    }
}

TEST_CASE("interleaving_rect is the smallest epsilon accepted by the oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = oracle::random_rectangle(rng, 5.0, 3.0);
        const auto b = oracle::random_rectangle(rng, 5.0, 3.0);
        const double e = interleaving_rect(a, b);
        CHECK(interleaving_oracle_rect(a, b, e));
        if (e > 1e-6) CHECK_FALSE(interleaving_oracle_rect(a, b, e - 1e-6));
    }
    CHECK(interleaving_oracle_rect(rect(0, 0, 1, 1), rect(0, 0, 1, 1), 0.0));
    CHECK(interleaving_oracle_rect(IntervalModule(), IntervalModule(), 0.0));
}

TEST_CASE("bottleneck examples") {
    const auto r = rect(0, 0, 2, 2);
    CHECK(bottleneck(of({r, rect(1, 1, 3, 4)}), of({rect(1, 1, 3, 4), r})).cost == 0.0);
    const auto lonely = bottleneck(of({r}), of({}));
    CHECK(lonely.cost == 1.0);
    CHECK(lonely.unmatched_left == std::vector<std::size_t>{0});
    CHECK(bottleneck(of({}), of({})).cost == 0.0);

    // Cross matching is cheaper than the identity.
    const auto a = of({rect(0, 0, 4, 4), rect(10, 10, 14, 14)});
    const auto b = of({rect(10.25, 10, 14, 14.25), rect(0.5, 0, 4, 4)});
    const auto m = bottleneck(a, b);
    CHECK(m.cost == 0.5);
    CHECK(m.cost == oracle::decomposition_bottleneck_exhaustive(a, b));
    CHECK(m.pairs.size() == 2);
    CHECK_THROWS_AS(bottleneck(of({IntervalModule({{0, 1}, {1, 0}}, {{3, 3}})}), of({})), NotRectangleError);
}

TEST_CASE("bottleneck equals exhaustive enumeration on small instances") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> count(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = oracle::random_rectangles(rng, count(rng), 4.0, 2.0);
        const auto b = oracle::random_rectangles(rng, count(rng), 4.0, 2.0);
        const auto result = bottleneck(a, b);
        REQUIRE(result.cost == oracle::decomposition_bottleneck_exhaustive(a, b));
        // The reported matching achieves the reported cost.
        double achieved = 0.0;
        std::vector<int> used_left(a.size()), used_right(b.size());
        for (auto [i, j] : result.pairs) {
            achieved = std::max(achieved, interleaving_rect(a.intervals[i], b.intervals[j]));
            ++used_left[i];
            ++used_right[j];
        }
        for (auto i : result.unmatched_left) {
            achieved = std::max(achieved, weight(a.intervals[i]));
            ++used_left[i];
        }
        for (auto j : result.unmatched_right) {
            achieved = std::max(achieved, weight(b.intervals[j]));
            ++used_right[j];
        }
        CHECK(achieved == result.cost);
        for (int u : used_left) CHECK(u == 1);
        for (int u : used_right) CHECK(u == 1);
    }
}

TEST_CASE("bottleneck_matching on raw cost matrices") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> size(0, 5);
    std::uniform_int_distribution<int> value(0, 6);  // small range forces ties
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = size(rng), k = size(rng);
        std::vector<std::vector<double>> cost(m, std::vector<double>(k));
        std::vector<double> ul(m), ur(k);
        for (auto& row : cost) {
            for (auto& c : row) c = value(rng);
        }
        for (auto& c : ul) c = value(rng);
        for (auto& c : ur) c = value(rng);
        REQUIRE(bottleneck_matching(cost, ul, ur).cost == oracle::bottleneck_exhaustive(cost, ul, ur));
    }
}

TEST_CASE("bottleneck is a pseudometric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> count(0, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_rectangles(rng, count(rng), 4.0, 2.0);
        const auto b = oracle::random_rectangles(rng, count(rng), 4.0, 2.0);
        const auto c = oracle::random_rectangles(rng, count(rng), 4.0, 2.0);
        const double ab = bottleneck(a, b).cost, ba = bottleneck(b, a).cost;
        const double bc = bottleneck(b, c).cost, ac = bottleneck(a, c).cost;
        CHECK(std::abs(ab - ba) <= 1e-9);
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(bottleneck(a, a).cost == 0.0);
    }
}

TEST_CASE("bottleneck to a perturbation is at most the perturbation size") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_rectangles(rng, 10, 4.0, 2.0);
        for (double eta : {0.01, 0.1, 0.5}) {
            CHECK(bottleneck(a, oracle::perturb(a, eta, rng)).cost <= eta);
        }
    }
}

TEST_CASE("single summands: interleaving and bottleneck coincide") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_rectangle(rng, 4.0, 2.0);
        const auto b = oracle::random_rectangle(rng, 4.0, 2.0);
        CHECK(interleaving_rect(a, b) <= bottleneck(of({a}), of({b})).cost);
        CHECK(interleaving_rect(a, b) == bottleneck(of({a}), of({b})).cost);
    }
}

TEST_CASE("barcode_bottleneck") {
    const Barcode a{{0, 4}, {1, 2}};
    const Barcode b{{0.5, 4}, {5, 5.2}};
    const auto m = barcode_bottleneck(a, b);
    // (0,4)-(0.5,4) at 0.5; (1,2) and (5,5.2) unmatched at 0.5 and 0.1.
    CHECK(m.cost == 0.5);
    CHECK(barcode_bottleneck({}, {}).cost == 0.0);
    CHECK(barcode_bottleneck({{0, kInfinity}}, {{1, kInfinity}}).cost == 1.0);
    CHECK(barcode_bottleneck({{0, kInfinity}}, {}).cost == kInfinity);
}
