// Command-line driver for the calibrated-forecasting library. Talks to the
// core exclusively through the C API in calib/calib.h.
//
// Exit codes: 0 all verdicts pass, 1 bound violation, 2 config error,
// 3 input parse error.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calib/calib.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBoundViolation = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitParseError = 3;

int exit_code_for(calib_status st) {
    switch (st) {
        case CALIB_OK: return kExitPass;
        case CALIB_ERR_PARSE: return kExitParseError;
        case CALIB_ERR_IO: return kExitParseError;
        default: return kExitConfigError;
    }
}

int fail(calib_status st) {
    std::fprintf(stderr, "error: %s\n", calib_last_error());
    return exit_code_for(st);
}

calib_side parse_side(const std::string& name, bool& ok) {
    ok = true;
    if (name == "left") return CALIB_SIDE_LEFT;
    if (name == "right") return CALIB_SIDE_RIGHT;
    if (name == "alt" || name == "alternate") return CALIB_SIDE_ALTERNATE;
    ok = false;
    return CALIB_SIDE_LEFT;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string render_pair(calib_rat v) {
    char exact[64], dec[64];
    calib_rat_render(v, exact, sizeof exact);
    calib_rat_render_decimal(v, dec, sizeof dec);
    return std::string(exact) + " (" + dec + ")";
}

int cmd_simulate(std::uint64_t T, const std::string& adversary, const std::string& side,
                 std::uint32_t m, std::uint64_t seed, const std::string& trace,
                 const std::string& summary, bool exact_columns,
                 std::size_t caldist_guard) {
    bool side_ok;
    calib_run_config cfg{};
    cfg.horizon = T;
    cfg.adversary = adversary.c_str();
    cfg.side = parse_side(side, side_ok);
    if (!side_ok) {
        std::fprintf(stderr, "error: unknown side '%s'\n", side.c_str());
        return kExitConfigError;
    }
    cfg.m_override = m;
    cfg.seed = seed;
    cfg.trace_path = trace.empty() ? nullptr : trace.c_str();
    cfg.summary_path = summary.empty() ? nullptr : summary.c_str();
    cfg.exact_columns = exact_columns ? 1 : 0;
    cfg.caldist_guard = caldist_guard;

    char* json = nullptr;
    int all_pass = 0;
    calib_status st = calib_run_match(&cfg, &json, &all_pass);
    if (st != CALIB_OK) return fail(st);
    std::printf("%s\n", json);
    calib_string_free(json);
    return all_pass ? kExitPass : kExitBoundViolation;
}

int cmd_sweep(const std::string& t_list, const std::string& adv_list,
              const std::string& side_list, std::uint32_t replicates,
              std::uint64_t seed, const std::string& out_dir, const std::string& report,
              std::size_t caldist_guard) {
    std::vector<std::uint64_t> horizons;
    for (const auto& s : split_list(t_list)) {
        try {
            horizons.push_back(std::stoull(s));
        } catch (...) {
            std::fprintf(stderr, "error: bad horizon '%s'\n", s.c_str());
            return kExitConfigError;
        }
    }
    std::vector<std::string> adversaries = split_list(adv_list);
    std::vector<const char*> adv_ptrs;
    for (const auto& a : adversaries) adv_ptrs.push_back(a.c_str());
    std::vector<calib_side> sides;
    for (const auto& s : split_list(side_list)) {
        bool ok;
        sides.push_back(parse_side(s, ok));
        if (!ok) {
            std::fprintf(stderr, "error: unknown side '%s'\n", s.c_str());
            return kExitConfigError;
        }
    }

    calib_sweep_config cfg{};
    cfg.horizons = horizons.data();
    cfg.n_horizons = horizons.size();
    cfg.adversaries = adv_ptrs.data();
    cfg.n_adversaries = adv_ptrs.size();
    cfg.sides = sides.data();
    cfg.n_sides = sides.size();
    cfg.replicates = replicates;
    cfg.base_seed = seed;
    cfg.output_dir = out_dir.empty() ? nullptr : out_dir.c_str();
    cfg.caldist_guard = caldist_guard;

    char* json = nullptr;
    int all_pass = 0;
    calib_status st = calib_sweep(&cfg, &json, &all_pass);
    if (st != CALIB_OK) return fail(st);

    auto parsed = nlohmann::json::parse(json);
    std::printf("%-8s %-22s %-6s %-4s %-18s %-14s %-10s %s\n", "T", "adversary", "side",
                "rep", "caldist_upper", "bound_2sqrt", "ratio", "pass");
    for (const auto& c : parsed["cells"]) {
        std::printf("%-8llu %-22s %-6s %-4u %-18s %-14s %-10s %s\n",
                    (unsigned long long)c["T"].get<std::uint64_t>(),
                    c["adversary"].get<std::string>().c_str(),
                    c["side"].get<std::string>().c_str(), c["replicate"].get<unsigned>(),
                    c["caldist_upper_decimal"].get<std::string>().c_str(),
                    c["bound_2sqrt"].get<std::string>().c_str(),
                    c["ratio_to_2sqrt"].get<std::string>().c_str(),
                    c["pass"].get<bool>() ? "pass" : "FAIL");
    }
    if (!report.empty()) {
        FILE* f = std::fopen(report.c_str(), "wb");
        if (!f) {
            std::fprintf(stderr, "error: cannot open report file '%s'\n", report.c_str());
            calib_string_free(json);
            return kExitConfigError;
        }
        std::fputs(json, f);
        std::fputc('\n', f);
        std::fclose(f);
    }
    calib_string_free(json);
    return all_pass ? kExitPass : kExitBoundViolation;
}

int cmd_caldist(const std::string& input, const std::string& mode,
                std::size_t max_rounds) {
    calib_transcript* t = nullptr;
    calib_status st = calib_transcript_load_csv(input.c_str(), &t);
    if (st != CALIB_OK) return fail(st);

    calib_rat value;
    if (mode == "exact") {
        st = calib_caldist_exact(t, max_rounds, &value);
    } else if (mode == "upper") {
        st = calib_ece(t, &value);
    } else {
        std::fprintf(stderr, "error: mode must be 'exact' or 'upper'\n");
        calib_transcript_free(t);
        return kExitConfigError;
    }
    calib_transcript_free(t);
    if (st != CALIB_OK) return fail(st);
    std::printf("%s\n", render_pair(value).c_str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic calibrated forecasting: simulation, sweeps, and "
                 "distance-to-calibration metrics"};
    app.require_subcommand(1);

    // simulate
    std::uint64_t T = 0;
    std::string adversary, side = "left", trace, summary;
    std::uint32_t m = 0;
    std::uint64_t seed = 0;
    bool exact_columns = false;
    std::size_t guard = 10;
    auto* sim = app.add_subcommand("simulate", "Run one forecaster-vs-adversary match");
    sim->add_option("--T", T, "Horizon (number of rounds)")->required();
    sim->add_option("--adversary", adversary,
                    "fixed:<bits> | bernoulli:<q>[:<seed>] | opposite | bias-amp")
        ->required();
    sim->add_option("--side", side, "left | right | alt (default left)");
    sim->add_option("--m", m, "Grid intervals override (default ceil(sqrt(T)))");
    sim->add_option("--seed", seed, "Seed for bernoulli specs without one");
    sim->add_option("--trace", trace, "Per-round trace CSV path");
    sim->add_option("--summary", summary, "Summary JSON path");
    sim->add_flag("--exact-columns", exact_columns, "Add exact rational columns to the trace");
    sim->add_option("--max-rounds", guard, "Exact CalDist round guard (default 10)");

    // sweep
    std::string t_list, adv_list, side_list = "left", out_dir, report;
    std::uint32_t replicates = 1;
    auto* sw = app.add_subcommand("sweep", "Run a grid of matches and report bound ratios");
    sw->add_option("--T", t_list, "Comma-separated horizons, e.g. 16,100,1024")->required();
    sw->add_option("--adversary", adv_list, "Comma-separated adversary specs")->required();
    sw->add_option("--side", side_list, "Comma-separated side policies (default left)");
    sw->add_option("--replicates", replicates, "Replicates per cell (seed = base + r)");
    sw->add_option("--seed", seed, "Base seed");
    sw->add_option("--out-dir", out_dir, "Directory for per-cell trace/summary files");
    sw->add_option("--report", report, "Aggregate report JSON path");
    sw->add_option("--max-rounds", guard, "Exact CalDist round guard (default 10)");

    // caldist
    std::string input, mode = "exact";
    auto* cd = app.add_subcommand("caldist", "Distance to calibration of a transcript file");
    cd->add_option("--input", input, "Transcript CSV with header t,p,y")->required();
    cd->add_option("--mode", mode, "exact | upper (upper prints the ECE bound)");
    cd->add_option("--max-rounds", guard, "Exact-mode round guard (default 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    if (sim->parsed())
        return cmd_simulate(T, adversary, side, m, seed, trace, summary, exact_columns, guard);
    if (sw->parsed())
        return cmd_sweep(t_list, adv_list, side_list, replicates, seed, out_dir, report, guard);
    return cmd_caldist(input, mode, guard);
}
