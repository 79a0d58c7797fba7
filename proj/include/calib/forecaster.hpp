#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "calib/bias_table.hpp"

namespace calib {

/// Which endpoint of the selected adjacent pair gets emitted. The choice is
/// arbitrary for the analysis; Alternate flips each round starting from Left.
enum class SidePolicy { Left, Right, Alternate };

/// Smallest m with m*m >= n.
std::uint32_t ceil_sqrt(std::uint64_t n);

/// Lowest sign-crossing adjacent pair: returns i = j - 1 where j is the
/// least index in {1..m} with alpha[j] >= 0. The pair then satisfies
/// alpha[i] <= 0 <= alpha[i+1]; existence follows from alpha[0] <= 0 and
/// alpha[m] >= 0.
std::uint32_t select_pair(const BiasTable& bias);

/// One transition of the hypothetical One-Step-Ahead algorithm: select the
/// pair, resolve it against the observed outcome, update the bias in place.
struct LookaheadStep {
    std::uint32_t index;  // grid index of the lookahead prediction
    Rational prediction;
};

LookaheadStep lookahead_step(BiasTable& bias, Outcome outcome);

/// Common predict/observe protocol shared by the main algorithm and the
/// comparison baselines. Strict alternation: predict, then observe.
class Forecaster {
public:
    virtual ~Forecaster() = default;

    /// Emits and records this round's prediction.
    virtual Rational predict() = 0;

    /// Feeds back the adversary's outcome for the round just predicted.
    virtual void observe(Outcome outcome) = 0;

    virtual const Transcript& emitted() const = 0;
};

/// The Almost-One-Step-Ahead state machine. Maintains the bias table of the
/// lookahead sequence (the predictions One-Step-Ahead would have made), emits
/// one endpoint of the current sign-crossing pair, and resolves the lookahead
/// prediction once the outcome arrives.
class AosaForecaster final : public Forecaster {
public:
    /// m defaults to ceil(sqrt(horizon)), keeping the drift term T/m at most
    /// sqrt(T) for non-square horizons.
    AosaForecaster(std::uint64_t horizon, SidePolicy side,
                   std::optional<std::uint32_t> m_override = std::nullopt);

    Rational predict() override;
    void observe(Outcome outcome) override;

    /// observe() plus access to the lookahead prediction it recorded.
    Rational observe_lookahead(Outcome outcome);

    const Transcript& emitted() const override { return emitted_; }
    const Transcript& lookahead() const { return lookahead_; }
    const BiasTable& bias() const { return bias_; }
    const PredictionGrid& grid() const { return grid_; }
    std::uint64_t horizon() const { return horizon_; }
    std::uint64_t round() const { return round_; }
    std::optional<std::uint32_t> current_pair() const { return current_pair_; }

private:
    std::uint64_t horizon_;
    SidePolicy side_;
    PredictionGrid grid_;
    BiasTable bias_;
    Transcript emitted_;
    Transcript lookahead_;
    std::optional<std::uint32_t> current_pair_;
    std::optional<Rational> pending_emitted_;
    std::uint64_t round_ = 0;
};

/// Baseline: always predicts the same value c in [0, 1].
class ConstantForecaster final : public Forecaster {
public:
    explicit ConstantForecaster(Rational c);
    Rational predict() override;
    void observe(Outcome outcome) override;
    const Transcript& emitted() const override { return emitted_; }

private:
    Rational c_;
    Transcript emitted_;
    bool awaiting_outcome_ = false;
    std::optional<Rational> pending_;
};

/// Baseline: predicts the running mean of past outcomes, 1/2 on the first
/// round.
class EmpiricalMeanForecaster final : public Forecaster {
public:
    Rational predict() override;
    void observe(Outcome outcome) override;
    const Transcript& emitted() const override { return emitted_; }

private:
    std::int64_t seen_ = 0;
    std::int64_t ones_ = 0;
    Transcript emitted_;
    bool awaiting_outcome_ = false;
    std::optional<Rational> pending_;
};

}  // namespace calib
