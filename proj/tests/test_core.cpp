#include <doctest.h>

#include <random>

#include "calib/bias_table.hpp"

using namespace calib;

namespace {

Transcript make(std::initializer_list<std::pair<Rational, int>> rounds) {
    Transcript t;
    for (const auto& [p, y] : rounds) t.push(p, outcome_from_bit(y));
    return t;
}

}  // namespace

TEST_CASE("grid points and membership") {
    PredictionGrid g(2);
    CHECK(g.points() == 3);
    CHECK(g.value(0) == Rational(0));
    CHECK(g.value(1) == Rational(1, 2));
    CHECK(g.value(2) == Rational(1));
    CHECK(g.index_of(Rational(1, 2)) == 1u);
    CHECK(!g.index_of(Rational(1, 3)).has_value());
    CHECK(!g.index_of(Rational(-1, 2)).has_value());
    CHECK(!g.index_of(Rational(3, 2)).has_value());
    CHECK_THROWS_AS(PredictionGrid(0), Error);
    CHECK_THROWS_AS(g.value(3), Error);
}

TEST_CASE("grid spacing is exactly 1/m") {
    for (std::uint32_t m : {1u, 2u, 3u, 7u, 100u}) {
        PredictionGrid g(m);
        for (std::uint32_t i = 0; i < m; ++i)
            CHECK(g.value(i + 1) - g.value(i) == Rational(1, m));
    }
}

TEST_CASE("transcript rejects out-of-range predictions") {
    Transcript t;
    CHECK_THROWS_AS(t.push(Rational(-1, 2), Outcome::Zero), Error);
    CHECK_THROWS_AS(t.push(Rational(3, 2), Outcome::One), Error);
    t.push(Rational(0), Outcome::Zero);
    t.push(Rational(1), Outcome::One);
    CHECK(t.size() == 2);
}

TEST_CASE("bias table single updates") {
    PredictionGrid g(2);
    BiasTable table(g);

    table.update(1, Outcome::One);
    CHECK(table.alpha(1) == Rational(-1, 2));

    table.update(1, Outcome::Zero);  // cancels
    CHECK(table.alpha(1) == Rational(0));

    table.update(2, Outcome::One);  // 1 - 1 = 0
    CHECK(table.alpha(2) == Rational(0));

    CHECK_THROWS_AS(table.update(3, Outcome::One), Error);
}

TEST_CASE("recompute_bias from scratch") {
    PredictionGrid g(2);

    CHECK(recompute_bias(Transcript{}, g) == BiasTable(g));

    auto t1 = make({{Rational(1, 2), 1}, {Rational(1, 2), 0}, {Rational(1), 1}});
    auto b1 = recompute_bias(t1, g);
    CHECK(b1.alpha(0) == Rational(0));
    CHECK(b1.alpha(1) == Rational(0));
    CHECK(b1.alpha(2) == Rational(0));

    auto t2 = make({{Rational(1, 2), 1}, {Rational(0), 0}});
    auto b2 = recompute_bias(t2, g);
    CHECK(b2.alpha(0) == Rational(0));
    CHECK(b2.alpha(1) == Rational(-1, 2));
    CHECK(b2.alpha(2) == Rational(0));
}

TEST_CASE("recompute_bias names the offending off-grid round") {
    PredictionGrid g(2);
    auto t = make({{Rational(1, 2), 1}, {Rational(1, 3), 0}});
    try {
        recompute_bias(t, g);
        FAIL("expected off-grid error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("round 2") != std::string::npos);
    }
}

TEST_CASE("incremental updates match recomputation on random transcripts") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        std::uint32_t m = 1 + rng() % 6;
        std::size_t T = rng() % 101;
        PredictionGrid g(m);
        BiasTable incremental(g);
        Transcript tr;
        for (std::size_t t = 0; t < T; ++t) {
            std::uint32_t i = rng() % (m + 1);
            Outcome y = outcome_from_bit(int(rng() % 2));
            tr.push(g.value(i), y);
            incremental.update(i, y);
        }
        CHECK(incremental == recompute_bias(tr, g));
    }
}

TEST_CASE("alpha[0] stays nonpositive, alpha[m] stays nonnegative") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 100; ++it) {
        std::uint32_t m = 1 + rng() % 6;
        PredictionGrid g(m);
        BiasTable table(g);
        for (int t = 0; t < 50; ++t) {
            table.update(rng() % (m + 1), outcome_from_bit(int(rng() % 2)));
            CHECK(table.alpha(0).sign() <= 0);
            CHECK(table.alpha(m).sign() >= 0);
        }
    }
}
