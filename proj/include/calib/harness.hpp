#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calib/adversary.hpp"
#include "calib/forecaster.hpp"
#include "calib/metrics.hpp"

namespace calib {

struct RunConfig {
    std::uint64_t horizon = 0;
    std::string adversary;  // spec string grammar, see Adversary
    SidePolicy side = SidePolicy::Left;
    std::optional<std::uint32_t> m_override;
    std::uint64_t seed = 0;
    std::optional<std::string> trace_path;
    std::optional<std::string> summary_path;
    bool exact_columns = false;
    std::size_t caldist_guard = kCaldistGuardDefault;
};

struct Verdicts {
    bool alpha_ok = false;  // max |alpha| <= 1
    bool ece_ok = false;    // ece(lookahead) <= m
    bool drift_ok = false;  // l1(emitted, lookahead) <= T/m
    bool caldist_ok = false;  // caldist_upper <= T/m + m

    bool all() const { return alpha_ok && ece_ok && drift_ok && caldist_ok; }
};

struct RunSummary {
    std::uint64_t T = 0;
    std::uint32_t m = 0;
    Rational ece_emitted;
    Rational ece_lookahead;
    Rational l1_drift;
    Rational caldist_upper;
    std::optional<Rational> caldist_exact;  // only when T <= guard
    Rational bound_tm_m;                    // T/m + m
    double bound_2sqrt = 0.0;               // 2*sqrt(T), reporting only
    Rational max_abs_alpha;                 // over all rounds and grid points
    Verdicts verdicts;
};

/// Drives predict -> adversary -> observe for T rounds, asserting the
/// per-round invariants (|alpha| <= 1, drift <= 1/m, pair sign condition) as
/// it goes; writes the trace CSV and summary JSON when paths are configured.
RunSummary run_match(const RunConfig& config);

/// Stable-layout JSON rendering of a summary; rationals appear both exactly
/// ("num/den") and as 12-significant-digit decimals.
std::string summary_to_json(const RunSummary& summary);

/// Recomputes every summary quantity and verdict from a trace CSV written
/// with exact columns, independent of the incremental accounting in
/// run_match.
RunSummary verify_trace(const std::string& trace_path, std::uint32_t m,
                        std::size_t caldist_guard = kCaldistGuardDefault);

struct SweepConfig {
    std::vector<std::uint64_t> horizons;
    std::vector<std::string> adversaries;
    std::vector<SidePolicy> sides;
    std::uint32_t replicates = 1;
    std::uint64_t base_seed = 0;
    std::optional<std::string> output_dir;  // per-cell trace + summary files
    std::size_t caldist_guard = kCaldistGuardDefault;
};

struct SweepCell {
    std::uint64_t T;
    std::string adversary;
    SidePolicy side;
    std::uint32_t replicate;
    std::uint64_t seed;
    RunSummary summary;
};

struct SweepReport {
    std::vector<SweepCell> cells;
    bool all_pass = false;
};

/// Runs every (T, adversary, side, replicate) cell; replicate r uses seed
/// base_seed + r so streams are distinct but reproducible.
SweepReport sweep(const SweepConfig& config);

std::string sweep_report_to_json(const SweepReport& report);

/// Reads a transcript from CSV with required header "t,p,y"; p accepts
/// decimals or "num/den". Parse errors name the offending line.
Transcript load_transcript_csv(const std::string& path);

const char* side_name(SidePolicy side);
SidePolicy side_from_name(const std::string& name);

}  // namespace calib
