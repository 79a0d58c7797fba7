#pragma once

#include <cstddef>
#include <map>

#include "calib/transcript.hpp"

namespace calib {

/// Default round guard for exact distance-to-calibration: the enumeration is
/// over set partitions of the rounds (Bell(10) = 115975).
inline constexpr std::size_t kCaldistGuardDefault = 10;

/// Expected calibration error: sum over distinct predicted values of the
/// absolute conditional bias. Unnormalized, so it scales with T.
Rational ece(const Transcript& transcript);

/// Per distinct predicted value: how often it was predicted and the mean
/// outcome over those rounds.
struct ConditionalMeans {
    struct Entry {
        std::size_t count;
        Rational mean_outcome;
    };
    std::map<Rational, Entry> by_value;
};

ConditionalMeans conditional_means(const Transcript& transcript);

/// A transcript whose predictions are perfectly calibrated (ece == 0 exactly).
class CalibratedTranscript {
public:
    explicit CalibratedTranscript(Transcript rounds);
    const Transcript& rounds() const { return rounds_; }

private:
    Transcript rounds_;
};

/// Replaces each prediction with the mean outcome over all rounds sharing it.
/// The result is perfectly calibrated and its L1 distance from the input
/// equals ece(input).
CalibratedTranscript calibrated_rounding(const Transcript& transcript);

/// Sum of |a.p^t - b.p^t|; requires equal lengths and identical outcomes.
Rational l1_distance(const Transcript& a, const Transcript& b);

/// Exact distance to calibration: minimum L1 distance to any perfectly
/// calibrated prediction sequence against the same outcomes. Every calibrated
/// sequence corresponds to a partition of rounds into blocks predicting the
/// block's mean outcome, so the minimum is taken over all set partitions.
/// Refuses transcripts longer than max_rounds.
Rational caldist_exact(const Transcript& transcript,
                       std::size_t max_rounds = kCaldistGuardDefault);

/// Upper bound on the distance to calibration of the emitted sequence:
/// l1_distance(emitted, lookahead) + ece(lookahead), by the triangle
/// inequality and the ECE upper bound on CalDist.
Rational caldist_upper(const Transcript& emitted, const Transcript& lookahead);

}  // namespace calib
