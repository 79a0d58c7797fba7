#pragma once

// Test-only oracle for the exact distance to calibration: enumerates set
// partitions by recursive block assignment (pick every subset containing the
// first unassigned round), independent of the restricted-growth-string
// iteration in the library.

#include <cstdint>
#include <vector>

#include "calib/metrics.hpp"

namespace calib::testing {

namespace detail {

inline Rational block_cost(const Transcript& tr, const std::vector<std::size_t>& block) {
    std::int64_t ones = 0;
    for (auto t : block) ones += bit(tr[t].outcome);
    Rational value(ones, std::int64_t(block.size()));
    Rational cost;
    for (auto t : block) cost += (tr[t].prediction - value).abs();
    return cost;
}

inline void recurse(const Transcript& tr, std::vector<std::size_t> remaining,
                    const Rational& cost_so_far, Rational& best, bool& have_best) {
    if (remaining.empty()) {
        if (!have_best || cost_so_far < best) {
            best = cost_so_far;
            have_best = true;
        }
        return;
    }
    // the block containing remaining[0] is remaining[0] plus any subset of
    // the rest
    std::size_t head = remaining[0];
    std::vector<std::size_t> tail(remaining.begin() + 1, remaining.end());
    std::uint64_t subsets = std::uint64_t(1) << tail.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<std::size_t> block{head};
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < tail.size(); ++k)
            (mask >> k & 1 ? block : rest).push_back(tail[k]);
        recurse(tr, std::move(rest), cost_so_far + block_cost(tr, block), best, have_best);
    }
}

}  // namespace detail

inline Rational caldist_bruteforce(const Transcript& transcript) {
    if (transcript.empty()) return Rational();
    std::vector<std::size_t> all(transcript.size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
    Rational best;
    bool have_best = false;
    detail::recurse(transcript, std::move(all), Rational(), best, have_best);
    return best;
}

}  // namespace calib::testing
