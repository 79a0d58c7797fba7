#include "calib/adversary.hpp"

namespace calib {

Adversary Adversary::fixed(std::vector<Outcome> outcomes) {
    Adversary a(Kind::Fixed);
    a.fixed_ = std::move(outcomes);
    return a;
}

Adversary Adversary::bernoulli(Rational q, std::uint64_t seed) {
    if (q.num() < 0 || q > Rational(1))
        raise(ErrorKind::InvalidArgument, "bernoulli probability must lie in [0, 1]");
    Adversary a(Kind::Bernoulli);
    a.q_ = std::move(q);
    a.seed_ = seed;
    return a;
}

Adversary Adversary::opposite() { return Adversary(Kind::Opposite); }

Adversary Adversary::bias_amplifying() { return Adversary(Kind::BiasAmplifying); }

Adversary Adversary::parse(const std::string& spec, std::uint64_t default_seed) {
    if (spec == "opposite") return opposite();
    if (spec == "bias-amp") return bias_amplifying();
    if (spec.rfind("fixed:", 0) == 0) {
        std::vector<Outcome> bits;
        for (char c : spec.substr(6)) {
            if (c != '0' && c != '1')
                raise(ErrorKind::Parse, "fixed adversary bitstring may only contain 0 and 1");
            bits.push_back(outcome_from_bit(c - '0'));
        }
        if (bits.empty()) raise(ErrorKind::Parse, "fixed adversary needs a nonempty bitstring");
        return fixed(std::move(bits));
    }
    if (spec.rfind("bernoulli:", 0) == 0) {
        std::string rest = spec.substr(10);
        auto colon = rest.find(':');
        std::uint64_t seed = default_seed;
        std::string qs = rest;
        if (colon != std::string::npos) {
            qs = rest.substr(0, colon);
            std::string ss = rest.substr(colon + 1);
            if (ss.empty() || ss.find_first_not_of("0123456789") != std::string::npos)
                raise(ErrorKind::Parse, "bernoulli seed must be an unsigned integer");
            seed = std::stoull(ss);
        }
        return bernoulli(Rational::parse(qs), seed);
    }
    raise(ErrorKind::Parse, "unknown adversary spec: '" + spec + "'");
}

std::uint64_t Adversary::bernoulli_word(std::uint64_t seed, std::uint64_t round) {
    // splitmix64 with the counter advanced by the round index; depends only
    // on (seed, round), never on call interleaving
    std::uint64_t z = seed + round * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Outcome Adversary::next(const Rational& prediction) {
    ++round_;
    switch (kind_) {
        case Kind::Fixed:
            if (round_ > fixed_.size())
                raise(ErrorKind::InvalidArgument,
                      "fixed adversary exhausted after " + std::to_string(fixed_.size()) +
                          " outcomes");
            return fixed_[round_ - 1];
        case Kind::Bernoulli: {
            // outcome 1 iff word / 2^64 < q, compared exactly
            std::uint64_t w = bernoulli_word(seed_, round_);
            unsigned __int128 lhs = (unsigned __int128)w * (unsigned __int128)q_.den();
            unsigned __int128 rhs = (unsigned __int128)q_.num() << 64;
            return lhs < rhs ? Outcome::One : Outcome::Zero;
        }
        case Kind::Opposite:
            return prediction <= Rational(1, 2) ? Outcome::One : Outcome::Zero;
        case Kind::BiasAmplifying: {
            // evaluate both candidate outcomes through the emitted-bias update
            // and keep the one with the larger resulting |bias|; tie -> 0
            Rational& b = bias_[prediction];
            Rational if_zero = (b + prediction).abs();
            Rational if_one = (b + prediction - Rational(1)).abs();
            Outcome y = if_one > if_zero ? Outcome::One : Outcome::Zero;
            b += prediction - outcome_value(y);
            return y;
        }
    }
    raise(ErrorKind::Invariant, "unreachable adversary kind");
}

}  // namespace calib
