#include "calib/forecaster.hpp"

namespace calib {

std::uint32_t ceil_sqrt(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = 1;
    while (r * r < n) ++r;
    return std::uint32_t(r);
}

std::uint32_t select_pair(const BiasTable& bias) {
    const std::uint32_t m = bias.grid().intervals();
    if (bias.alpha(0).sign() > 0 || bias.alpha(m).sign() < 0)
        raise(ErrorKind::Invariant, "bias table endpoints lost their signs");
    for (std::uint32_t j = 1; j <= m; ++j)
        if (bias.alpha(j).sign() >= 0) return j - 1;
    raise(ErrorKind::Invariant, "no sign-crossing pair found");
}

LookaheadStep lookahead_step(BiasTable& bias, Outcome outcome) {
    std::uint32_t i = select_pair(bias);
    // argmin over {p_i, p_{i+1}} of |p - y|: the lower endpoint for y = 0,
    // the upper for y = 1, never a tie
    std::uint32_t chosen = i + std::uint32_t(bit(outcome));
    bias.update(chosen, outcome);
    return {chosen, bias.grid().value(chosen)};
}

AosaForecaster::AosaForecaster(std::uint64_t horizon, SidePolicy side,
                               std::optional<std::uint32_t> m_override)
    : horizon_(horizon),
      side_(side),
      grid_(m_override ? *m_override : ceil_sqrt(horizon)),
      bias_(grid_) {
    if (horizon == 0) raise(ErrorKind::InvalidArgument, "horizon must be at least 1");
    if (m_override && *m_override == 0)
        raise(ErrorKind::InvalidArgument, "grid override must be at least 1");
}

Rational AosaForecaster::predict() {
    if (current_pair_)
        raise(ErrorKind::Protocol, "predict called twice without an observe between");
    std::uint32_t i = select_pair(bias_);
    current_pair_ = i;
    bool right = side_ == SidePolicy::Right ||
                 (side_ == SidePolicy::Alternate && round_ % 2 == 1);
    pending_emitted_ = grid_.value(right ? i + 1 : i);
    return *pending_emitted_;
}

void AosaForecaster::observe(Outcome outcome) { observe_lookahead(outcome); }

Rational AosaForecaster::observe_lookahead(Outcome outcome) {
    if (!current_pair_)
        raise(ErrorKind::Protocol, "observe called before predict");
    emitted_.push(*pending_emitted_, outcome);
    pending_emitted_.reset();

    auto step = lookahead_step(bias_, outcome);
    if (step.index != *current_pair_ && step.index != *current_pair_ + 1)
        raise(ErrorKind::Invariant, "lookahead resolved outside the committed pair");
    lookahead_.push(step.prediction, outcome);
    current_pair_.reset();
    ++round_;
    return step.prediction;
}

ConstantForecaster::ConstantForecaster(Rational c) : c_(std::move(c)) {
    if (c_.num() < 0 || c_ > Rational(1))
        raise(ErrorKind::InvalidArgument, "constant prediction must lie in [0, 1]");
}

Rational ConstantForecaster::predict() {
    if (awaiting_outcome_)
        raise(ErrorKind::Protocol, "predict called twice without an observe between");
    awaiting_outcome_ = true;
    pending_ = c_;
    return c_;
}

void ConstantForecaster::observe(Outcome outcome) {
    if (!awaiting_outcome_) raise(ErrorKind::Protocol, "observe called before predict");
    emitted_.push(*pending_, outcome);
    awaiting_outcome_ = false;
}

Rational EmpiricalMeanForecaster::predict() {
    if (awaiting_outcome_)
        raise(ErrorKind::Protocol, "predict called twice without an observe between");
    awaiting_outcome_ = true;
    pending_ = seen_ == 0 ? Rational(1, 2) : Rational(ones_, seen_);
    return *pending_;
}

void EmpiricalMeanForecaster::observe(Outcome outcome) {
    if (!awaiting_outcome_) raise(ErrorKind::Protocol, "observe called before predict");
    emitted_.push(*pending_, outcome);
    ++seen_;
    ones_ += bit(outcome);
    awaiting_outcome_ = false;
}

}  // namespace calib
