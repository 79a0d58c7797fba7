#pragma once

#include <cstddef>
#include <vector>

#include "calib/error.hpp"
#include "calib/rational.hpp"

namespace calib {

enum class Outcome : int { Zero = 0, One = 1 };

inline int bit(Outcome y) { return static_cast<int>(y); }
inline Rational outcome_value(Outcome y) { return Rational(bit(y)); }

inline Outcome outcome_from_bit(int b) {
    if (b != 0 && b != 1) raise(ErrorKind::InvalidArgument, "outcome must be 0 or 1");
    return static_cast<Outcome>(b);
}

struct Round {
    Rational prediction;
    Outcome outcome;
};

/// Ordered sequence of (prediction, outcome) rounds. Round indices are
/// 1-based in all reporting. Predictions must lie in [0, 1].
class Transcript {
public:
    Transcript() = default;

    void push(Rational prediction, Outcome outcome) {
        if (prediction.num() < 0 || prediction > Rational(1))
            raise(ErrorKind::InvalidArgument,
                  "prediction " + prediction.to_string() + " outside [0, 1]");
        rounds_.push_back({std::move(prediction), outcome});
    }

    std::size_t size() const { return rounds_.size(); }
    bool empty() const { return rounds_.empty(); }
    const Round& operator[](std::size_t i) const { return rounds_[i]; }

    auto begin() const { return rounds_.begin(); }
    auto end() const { return rounds_.end(); }

private:
    std::vector<Round> rounds_;
};

}  // namespace calib
