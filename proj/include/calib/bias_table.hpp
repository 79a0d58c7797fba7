#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calib/grid.hpp"
#include "calib/transcript.hpp"

namespace calib {

/// Per-grid-point conditional bias table: alpha[i] is the running sum of
/// (i/m - y) over rounds predicting i/m.
class BiasTable {
public:
    explicit BiasTable(PredictionGrid grid)
        : grid_(grid), alpha_(grid.points()) {}

    const PredictionGrid& grid() const { return grid_; }
    const Rational& alpha(std::uint32_t i) const {
        if (i > grid_.intervals()) raise(ErrorKind::InvalidArgument, "bias index out of range");
        return alpha_[i];
    }

    /// alpha[index] += value(index) - outcome; other entries untouched.
    void update(std::uint32_t index, Outcome y) {
        if (index > grid_.intervals())
            raise(ErrorKind::InvalidArgument, "bias update index out of range");
        alpha_[index] += grid_.value(index) - outcome_value(y);
    }

    Rational max_abs() const {
        Rational best;
        for (const auto& a : alpha_)
            if (a.abs() > best) best = a.abs();
        return best;
    }

    friend bool operator==(const BiasTable&, const BiasTable&) = default;

private:
    PredictionGrid grid_;
    std::vector<Rational> alpha_;
};

/// From-scratch recomputation of the bias table for a transcript whose
/// predictions all lie on the grid. Reference path for checking the
/// incrementally maintained table.
inline BiasTable recompute_bias(const Transcript& transcript, const PredictionGrid& grid) {
    BiasTable table(grid);
    for (std::size_t t = 0; t < transcript.size(); ++t) {
        auto idx = grid.index_of(transcript[t].prediction);
        if (!idx)
            raise(ErrorKind::InvalidArgument,
                  "round " + std::to_string(t + 1) + ": prediction " +
                      transcript[t].prediction.to_string() + " is off the grid");
        table.update(*idx, transcript[t].outcome);
    }
    return table;
}

}  // namespace calib
