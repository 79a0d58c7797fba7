#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "calib/transcript.hpp"

namespace calib {

/// Outcome generators. Spec string grammar:
///   fixed:<bitstring>        oblivious, plays the stored bits in order
///   bernoulli:<q>[:<seed>]   oblivious, 1 with probability q from a seeded
///                            counter-based stream; seed defaults to the
///                            run seed when omitted
///   opposite                 adaptive: 1 if the prediction is <= 1/2, else 0
///   bias-amp                 adaptive: plays the outcome that grows the
///                            absolute conditional bias of the emitted
///                            sequence at the current prediction (tie -> 0)
class Adversary {
public:
    enum class Kind { Fixed, Bernoulli, Opposite, BiasAmplifying };

    static Adversary parse(const std::string& spec, std::uint64_t default_seed = 0);

    static Adversary fixed(std::vector<Outcome> outcomes);
    static Adversary bernoulli(Rational q, std::uint64_t seed);
    static Adversary opposite();
    static Adversary bias_amplifying();

    Kind kind() const { return kind_; }

    /// Reveals the outcome for the next round, given the forecaster's
    /// current prediction. Advances internal state.
    Outcome next(const Rational& prediction);

    /// The pinned Bernoulli stream: splitmix64 of (seed + t * golden ratio),
    /// t the 1-based round index. Exposed so reproducibility tests can pin
    /// the generator independently of the adversary plumbing.
    static std::uint64_t bernoulli_word(std::uint64_t seed, std::uint64_t round);

private:
    explicit Adversary(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::uint64_t round_ = 0;  // rounds already answered

    std::vector<Outcome> fixed_;           // Fixed
    Rational q_;                           // Bernoulli
    std::uint64_t seed_ = 0;               // Bernoulli
    std::map<Rational, Rational> bias_;    // BiasAmplifying: emitted-sequence bias
};

}  // namespace calib
