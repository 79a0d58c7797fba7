#include "calib/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace calib {

Rational ece(const Transcript& transcript) {
    // group the bias sum by predicted value; the formal sum over p in [0,1]
    // has finite support
    std::map<Rational, Rational> bias;
    for (const auto& r : transcript)
        bias[r.prediction] += r.prediction - outcome_value(r.outcome);
    Rational total;
    for (const auto& [p, b] : bias) total += b.abs();
    return total;
}

ConditionalMeans conditional_means(const Transcript& transcript) {
    if (transcript.empty())
        raise(ErrorKind::InvalidArgument, "conditional means undefined for an empty transcript");
    std::map<Rational, std::pair<std::int64_t, std::int64_t>> tally;  // count, ones
    for (const auto& r : transcript) {
        auto& [count, ones] = tally[r.prediction];
        ++count;
        ones += bit(r.outcome);
    }
    ConditionalMeans out;
    for (const auto& [p, t] : tally)
        out.by_value.emplace(p, ConditionalMeans::Entry{std::size_t(t.first),
                                                        Rational(t.second, t.first)});
    return out;
}

CalibratedTranscript::CalibratedTranscript(Transcript rounds) : rounds_(std::move(rounds)) {
    if (!ece(rounds_).is_zero())
        raise(ErrorKind::Invariant, "transcript is not perfectly calibrated");
}

CalibratedTranscript calibrated_rounding(const Transcript& transcript) {
    auto means = conditional_means(transcript);
    Transcript out;
    for (const auto& r : transcript)
        out.push(means.by_value.at(r.prediction).mean_outcome, r.outcome);
    return CalibratedTranscript(std::move(out));
}

Rational l1_distance(const Transcript& a, const Transcript& b) {
    if (a.size() != b.size())
        raise(ErrorKind::InvalidArgument, "transcript length mismatch");
    Rational total;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].outcome != b[t].outcome)
            raise(ErrorKind::InvalidArgument,
                  "outcome mismatch at round " + std::to_string(t + 1));
        total += (a[t].prediction - b[t].prediction).abs();
    }
    return total;
}

namespace {

// cost of one partition, stopping early once the running total reaches the
// incumbent minimum
Rational partition_cost(const Transcript& tr, const std::vector<std::uint32_t>& assign,
                        std::uint32_t blocks, const Rational* incumbent) {
    std::vector<std::int64_t> size(blocks, 0), ones(blocks, 0);
    for (std::size_t t = 0; t < tr.size(); ++t) {
        ++size[assign[t]];
        ones[assign[t]] += bit(tr[t].outcome);
    }
    std::vector<Rational> value(blocks);
    for (std::uint32_t b = 0; b < blocks; ++b) value[b] = Rational(ones[b], size[b]);
    Rational cost;
    for (std::size_t t = 0; t < tr.size(); ++t) {
        cost += (tr[t].prediction - value[assign[t]]).abs();
        if (incumbent && cost >= *incumbent) return cost;
    }
    return cost;
}

}  // namespace

Rational caldist_exact(const Transcript& transcript, std::size_t max_rounds) {
    const std::size_t T = transcript.size();
    if (T == 0) return Rational();
    if (T > max_rounds)
        raise(ErrorKind::Guard,
              "exact distance to calibration refused: " + std::to_string(T) +
                  " rounds exceeds the guard of " + std::to_string(max_rounds) +
                  " (enumeration over set partitions); raise max_rounds to override");

    // iterate restricted growth strings: a[0]=0, a[t] <= max(a[0..t-1]) + 1
    std::vector<std::uint32_t> a(T, 0);
    std::vector<std::uint32_t> prefix_max(T, 0);  // max(a[0..t-1]), prefix_max[0] unused
    bool have_best = false;
    Rational best;
    while (true) {
        std::uint32_t blocks = (T == 1 ? 1 : std::max(prefix_max[T - 1], a[T - 1]) + 1);
        Rational cost = partition_cost(transcript, a, blocks, have_best ? &best : nullptr);
        if (!have_best || cost < best) {
            best = cost;
            have_best = true;
        }
        // advance to the next restricted growth string
        std::size_t t = T - 1;
        for (; t >= 1; --t) {
            if (a[t] <= prefix_max[t]) {
                ++a[t];
                for (std::size_t s = t + 1; s < T; ++s) {
                    a[s] = 0;
                    prefix_max[s] = std::max(prefix_max[s - 1], a[s - 1]);
                }
                break;
            }
        }
        if (t == 0) break;
    }
    return best;
}

Rational caldist_upper(const Transcript& emitted, const Transcript& lookahead) {
    return l1_distance(emitted, lookahead) + ece(lookahead);
}

}  // namespace calib
