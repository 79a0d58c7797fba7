#include <doctest.h>

#include <random>

#include "calib/forecaster.hpp"
#include "calib/metrics.hpp"

using namespace calib;

TEST_CASE("ceil_sqrt picks the grid size") {
    CHECK(ceil_sqrt(16) == 4);
    CHECK(ceil_sqrt(10) == 4);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(100) == 10);
    CHECK(ceil_sqrt(101) == 11);
}

TEST_CASE("new forecaster: grid sizing and contract checks") {
    CHECK(AosaForecaster(16, SidePolicy::Left).grid().intervals() == 4);
    CHECK(AosaForecaster(10, SidePolicy::Left).grid().intervals() == 4);
    CHECK(AosaForecaster(1, SidePolicy::Left).grid().intervals() == 1);
    CHECK(AosaForecaster(5, SidePolicy::Left, 2).grid().intervals() == 2);
    CHECK_THROWS_AS(AosaForecaster(0, SidePolicy::Left), Error);
    CHECK_THROWS_AS(AosaForecaster(4, SidePolicy::Left, 0), Error);
}

TEST_CASE("select_pair: lowest sign crossing") {
    PredictionGrid g2(2);
    BiasTable zero(g2);
    CHECK(select_pair(zero) == 0);

    BiasTable t1(g2);
    t1.update(1, Outcome::One);  // alpha = (0, -1/2, 0)
    CHECK(select_pair(t1) == 1);

    PredictionGrid g3(3);
    BiasTable t2(g3);
    t2.update(1, Outcome::Zero);  // alpha[1] = +1/3
    t2.update(2, Outcome::One);   // alpha[2] = -1/3
    CHECK(select_pair(t2) == 0);  // j = 1 is the least index with alpha >= 0
}

TEST_CASE("lookahead_step resolves the pair against the outcome") {
    PredictionGrid g(2);

    BiasTable a(g);
    auto s1 = lookahead_step(a, Outcome::One);
    CHECK(s1.prediction == Rational(1, 2));
    CHECK(a.alpha(1) == Rational(-1, 2));

    BiasTable b(g);
    auto s2 = lookahead_step(b, Outcome::Zero);
    CHECK(s2.prediction == Rational(0));
    CHECK(b.alpha(0) == Rational(0));

    BiasTable c(g);
    c.update(1, Outcome::One);  // (0, -1/2, 0)
    auto s3 = lookahead_step(c, Outcome::Zero);
    CHECK(s3.prediction == Rational(1, 2));
    CHECK(c.alpha(1) == Rational(0));

    BiasTable d(g);
    d.update(1, Outcome::One);  // pair becomes (1/2, 1)
    auto s4 = lookahead_step(d, Outcome::One);
    CHECK(s4.prediction == Rational(1));
    CHECK(d.alpha(2) == Rational(0));
}

TEST_CASE("predict: side policy picks the endpoint") {
    AosaForecaster left(4, SidePolicy::Left, 2);
    CHECK(left.predict() == Rational(0));

    AosaForecaster right(4, SidePolicy::Right, 2);
    CHECK(right.predict() == Rational(1, 2));

    AosaForecaster fc(4, SidePolicy::Left, 2);
    fc.predict();
    fc.observe(Outcome::One);  // bias now (0, -1/2, 0)
    CHECK(fc.predict() == Rational(1, 2));
}

TEST_CASE("alternate side flips each round starting from Left") {
    AosaForecaster fc(4, SidePolicy::Alternate, 2);
    CHECK(fc.predict() == Rational(0));  // round 1: left of (0, 1/2)
    fc.observe(Outcome::Zero);           // lookahead 0, bias unchanged
    CHECK(fc.predict() == Rational(1, 2));  // round 2: right of (0, 1/2)
}

TEST_CASE("predict/observe protocol is strictly alternating") {
    AosaForecaster fc(4, SidePolicy::Left, 2);
    CHECK_THROWS_AS(fc.observe(Outcome::One), Error);
    fc.predict();
    CHECK_THROWS_AS(fc.predict(), Error);
    fc.observe(Outcome::One);
    CHECK_NOTHROW(fc.predict());
}

TEST_CASE("golden trace: m=2, side=Left, y=(1,1,0,0)") {
    AosaForecaster fc(4, SidePolicy::Left, 2);
    Outcome ys[] = {Outcome::One, Outcome::One, Outcome::Zero, Outcome::Zero};
    Rational expected_p[] = {Rational(0), Rational(1, 2), Rational(1, 2), Rational(0)};
    Rational expected_pt[] = {Rational(1, 2), Rational(1), Rational(1, 2), Rational(0)};
    for (int t = 0; t < 4; ++t) {
        CHECK(fc.predict() == expected_p[t]);
        CHECK(fc.observe_lookahead(ys[t]) == expected_pt[t]);
    }
    CHECK(fc.bias().alpha(0) == Rational(0));
    CHECK(fc.bias().alpha(1) == Rational(0));
    CHECK(fc.bias().alpha(2) == Rational(0));
    CHECK(ece(fc.lookahead()) == Rational(0));
    CHECK(l1_distance(fc.emitted(), fc.lookahead()) == Rational(1));
}

namespace {

// drives one match against a random adaptive-ish adversary while checking
// every per-round property
void drive_and_check(std::uint64_t T, SidePolicy side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    AosaForecaster fc(T, side);
    const std::uint32_t m = fc.grid().intervals();
    Rational prev_ece;
    for (std::uint64_t t = 0; t < T; ++t) {
        Rational p = fc.predict();
        std::uint32_t pair = *fc.current_pair();
        // pair sign condition
        CHECK(fc.bias().alpha(pair).sign() <= 0);
        CHECK(fc.bias().alpha(pair + 1).sign() >= 0);

        Outcome y = outcome_from_bit(int(rng() % 2));
        std::uint32_t resolved = pair + std::uint32_t(bit(y));
        Rational pre_alpha = fc.bias().alpha(resolved);
        Rational p_tilde = fc.observe_lookahead(y);

        // sign opposition: the pre-update alpha and the increment are zero
        // or differ in sign
        Rational increment = p_tilde - outcome_value(y);
        CHECK(pre_alpha.sign() * increment.sign() <= 0);

        // per-round drift and Theorem 2 state bound
        CHECK((p - p_tilde).abs() <= Rational(1, m));
        CHECK(fc.bias().max_abs() <= Rational(1));

        // endpoint quiescence
        CHECK(fc.bias().alpha(0) == Rational(0));
        CHECK(fc.bias().alpha(m) == Rational(0));

        // ece of the lookahead prefix never exceeds m (nor even m - 1)
        Rational prefix_ece = ece(fc.lookahead());
        CHECK(prefix_ece <= Rational(m));
        CHECK(prefix_ece <= Rational(m) - Rational(1));
    }
    CHECK(l1_distance(fc.emitted(), fc.lookahead()) <=
          Rational(std::int64_t(T), m));
}

}  // namespace

TEST_CASE("per-round invariants hold against random outcomes") {
    std::uint64_t seed = 100;
    for (SidePolicy side : {SidePolicy::Left, SidePolicy::Right, SidePolicy::Alternate})
        for (std::uint64_t T : {1ULL, 2ULL, 7ULL, 16ULL, 50ULL, 144ULL})
            drive_and_check(T, side, seed++);
}

TEST_CASE("observe is predict-then-observe composed with the lookahead transition") {
    std::mt19937_64 rng(31);
    AosaForecaster fc(64, SidePolicy::Alternate);
    BiasTable shadow(fc.grid());
    for (int t = 0; t < 64; ++t) {
        fc.predict();
        Outcome y = outcome_from_bit(int(rng() % 2));
        Rational p_tilde = fc.observe_lookahead(y);
        auto step = lookahead_step(shadow, y);
        CHECK(step.prediction == p_tilde);
        CHECK(shadow == fc.bias());
    }
}

TEST_CASE("constant baseline") {
    CHECK_THROWS_AS(ConstantForecaster(Rational(3, 2)), Error);

    ConstantForecaster fc(Rational(1, 2));
    for (int t = 0; t < 4; ++t) {
        CHECK(fc.predict() == Rational(1, 2));
        fc.observe(Outcome::One);
    }
    CHECK(ece(fc.emitted()) == Rational(2));

    ConstantForecaster zero(Rational(0));
    for (int t = 0; t < 4; ++t) {
        zero.predict();
        zero.observe(Outcome::Zero);
    }
    CHECK(ece(zero.emitted()) == Rational(0));
}

TEST_CASE("empirical mean baseline") {
    EmpiricalMeanForecaster fc;
    CHECK(fc.predict() == Rational(1, 2));
    fc.observe(Outcome::One);
    CHECK(fc.predict() == Rational(1));
    fc.observe(Outcome::One);
    CHECK_THROWS_AS(fc.observe(Outcome::One), Error);
}
