#pragma once

#include <cstdint>
#include <optional>

#include "calib/error.hpp"
#include "calib/rational.hpp"

namespace calib {

/// The prediction grid {0, 1/m, ..., 1}: m intervals, m+1 points.
class PredictionGrid {
public:
    explicit PredictionGrid(std::uint32_t m) : m_(m) {
        if (m == 0) raise(ErrorKind::InvalidArgument, "grid needs at least one interval");
    }

    std::uint32_t intervals() const { return m_; }
    std::uint32_t points() const { return m_ + 1; }

    Rational value(std::uint32_t i) const {
        if (i > m_) raise(ErrorKind::InvalidArgument, "grid index out of range");
        return Rational(i, m_);
    }

    Rational step() const { return Rational(1, m_); }

    /// Exact membership: p is on the grid iff p*m is an integer in [0, m].
    std::optional<std::uint32_t> index_of(const Rational& p) const {
        if (p.num() < 0 || p > Rational(1)) return std::nullopt;
        if (std::int64_t(m_) % p.den() != 0) return std::nullopt;
        return std::uint32_t(p.num() * (std::int64_t(m_) / p.den()));
    }

    friend bool operator==(const PredictionGrid&, const PredictionGrid&) = default;

private:
    std::uint32_t m_;
};

}  // namespace calib
