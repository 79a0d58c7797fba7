#include "calib/harness.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace calib {

namespace {

using ordered_json = nlohmann::ordered_json;

void put_rational(ordered_json& j, const std::string& key, const Rational& v) {
    j[key] = v.to_string();
    j[key + "_decimal"] = v.to_decimal();
}

Rational running_ece(const BiasTable& bias) {
    Rational total;
    for (std::uint32_t i = 0; i <= bias.grid().intervals(); ++i)
        total += bias.alpha(i).abs();
    return total;
}

std::string decimal_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

const char* side_name(SidePolicy side) {
    switch (side) {
        case SidePolicy::Left: return "left";
        case SidePolicy::Right: return "right";
        case SidePolicy::Alternate: return "alt";
    }
    return "?";
}

SidePolicy side_from_name(const std::string& name) {
    if (name == "left") return SidePolicy::Left;
    if (name == "right") return SidePolicy::Right;
    if (name == "alt" || name == "alternate") return SidePolicy::Alternate;
    raise(ErrorKind::Parse, "unknown side policy: '" + name + "'");
}

RunSummary run_match(const RunConfig& config) {
    if (config.horizon == 0)
        raise(ErrorKind::InvalidArgument, "horizon must be at least 1");

    Adversary adversary = Adversary::parse(config.adversary, config.seed);
    AosaForecaster forecaster(config.horizon, config.side, config.m_override);
    const std::uint32_t m = forecaster.grid().intervals();
    const Rational step = forecaster.grid().step();

    std::ofstream trace;
    if (config.trace_path) {
        trace.open(*config.trace_path, std::ios::binary | std::ios::trunc);
        if (!trace)
            raise(ErrorKind::Io, "cannot open trace file '" + *config.trace_path + "'");
        trace << "t,pair_i,p,y,p_tilde,drift_cum,ece_tilde_cum,max_abs_alpha";
        if (config.exact_columns) trace << ",p_exact,p_tilde_exact";
        trace << "\n";
    }

    Rational drift_cum;
    Rational max_abs_alpha_all;
    RunSummary s;

    for (std::uint64_t t = 1; t <= config.horizon; ++t) {
        Rational p = forecaster.predict();
        std::uint32_t pair_i = *forecaster.current_pair();
        Outcome y = adversary.next(p);
        Rational p_tilde = forecaster.observe_lookahead(y);

        Rational drift = (p - p_tilde).abs();
        drift_cum += drift;
        Rational round_max_alpha = forecaster.bias().max_abs();
        if (round_max_alpha > max_abs_alpha_all) max_abs_alpha_all = round_max_alpha;

        // per-round invariant checks, exact
        if (round_max_alpha > Rational(1)) {
            for (std::uint32_t j = 0; j <= m; ++j)
                if (forecaster.bias().alpha(j).abs() > Rational(1))
                    raise(ErrorKind::Invariant,
                          "round " + std::to_string(t) + ": |alpha| > 1 at grid point " +
                              std::to_string(j) + "/" + std::to_string(m));
        }
        if (drift > step)
            raise(ErrorKind::Invariant,
                  "round " + std::to_string(t) + ": emitted/lookahead drift exceeds 1/m");

        if (trace.is_open()) {
            trace << t << ',' << pair_i << ',' << p.to_decimal() << ',' << bit(y) << ','
                  << p_tilde.to_decimal() << ',' << drift_cum.to_decimal() << ','
                  << running_ece(forecaster.bias()).to_decimal() << ','
                  << round_max_alpha.to_decimal();
            if (config.exact_columns)
                trace << ',' << p.to_string() << ',' << p_tilde.to_string();
            trace << "\n";
        }
    }
    if (trace.is_open()) {
        trace.close();
        if (!trace) raise(ErrorKind::Io, "failed writing trace file '" + *config.trace_path + "'");
    }

    s.T = config.horizon;
    s.m = m;
    s.ece_emitted = ece(forecaster.emitted());
    s.ece_lookahead = ece(forecaster.lookahead());
    s.l1_drift = drift_cum;
    s.caldist_upper = s.l1_drift + s.ece_lookahead;
    if (config.horizon <= config.caldist_guard)
        s.caldist_exact = caldist_exact(forecaster.emitted(), config.caldist_guard);
    s.bound_tm_m = Rational(std::int64_t(config.horizon), m) + Rational(m);
    s.bound_2sqrt = 2.0 * std::sqrt(double(config.horizon));
    s.max_abs_alpha = max_abs_alpha_all;
    s.verdicts.alpha_ok = s.max_abs_alpha <= Rational(1);
    s.verdicts.ece_ok = s.ece_lookahead <= Rational(m);
    s.verdicts.drift_ok = s.l1_drift <= Rational(std::int64_t(config.horizon), m);
    s.verdicts.caldist_ok = s.caldist_upper <= s.bound_tm_m;

    if (config.summary_path) {
        std::ofstream out(*config.summary_path, std::ios::binary | std::ios::trunc);
        if (!out)
            raise(ErrorKind::Io, "cannot open summary file '" + *config.summary_path + "'");
        out << summary_to_json(s) << "\n";
        if (!out.good())
            raise(ErrorKind::Io, "failed writing summary file '" + *config.summary_path + "'");
    }
    return s;
}

std::string summary_to_json(const RunSummary& s) {
    ordered_json j;
    j["T"] = s.T;
    j["m"] = s.m;
    put_rational(j, "ece_emitted", s.ece_emitted);
    put_rational(j, "ece_lookahead", s.ece_lookahead);
    put_rational(j, "l1_drift", s.l1_drift);
    put_rational(j, "caldist_upper", s.caldist_upper);
    if (s.caldist_exact) put_rational(j, "caldist_exact", *s.caldist_exact);
    put_rational(j, "bound_tm_m", s.bound_tm_m);
    j["bound_2sqrt"] = decimal_double(s.bound_2sqrt);
    put_rational(j, "max_abs_alpha", s.max_abs_alpha);
    j["verdicts"] = {{"alpha_ok", s.verdicts.alpha_ok},
                     {"ece_ok", s.verdicts.ece_ok},
                     {"drift_ok", s.verdicts.drift_ok},
                     {"caldist_ok", s.verdicts.caldist_ok}};
    return j.dump(2);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

RunSummary verify_trace(const std::string& trace_path, std::uint32_t m,
                        std::size_t caldist_guard) {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open trace file '" + trace_path + "'");
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::Parse, trace_path + ":1: empty trace file");
    auto header = split_csv_line(line);
    std::ptrdiff_t col_y = -1, col_p = -1, col_pt = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "y") col_y = c;
        if (header[c] == "p_exact") col_p = c;
        if (header[c] == "p_tilde_exact") col_pt = c;
    }
    if (col_y < 0 || col_p < 0 || col_pt < 0)
        raise(ErrorKind::Parse,
              trace_path + ":1: trace verification needs the exact columns "
              "(run with exact columns enabled)");

    Transcript emitted, lookahead;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            raise(ErrorKind::Parse,
                  trace_path + ":" + std::to_string(lineno) + ": wrong number of columns");
        try {
            Outcome y = outcome_from_bit(std::stoi(cells[col_y]));
            emitted.push(Rational::parse(cells[col_p]), y);
            lookahead.push(Rational::parse(cells[col_pt]), y);
        } catch (const std::exception&) {
            raise(ErrorKind::Parse,
                  trace_path + ":" + std::to_string(lineno) + ": malformed trace row");
        }
    }

    RunSummary s;
    s.T = emitted.size();
    s.m = m;
    s.ece_emitted = ece(emitted);
    s.ece_lookahead = ece(lookahead);
    s.l1_drift = l1_distance(emitted, lookahead);
    s.caldist_upper = s.l1_drift + s.ece_lookahead;
    if (s.T > 0 && s.T <= caldist_guard)
        s.caldist_exact = caldist_exact(emitted, caldist_guard);
    s.bound_tm_m = Rational(std::int64_t(s.T), m) + Rational(m);
    s.bound_2sqrt = 2.0 * std::sqrt(double(s.T));
    // running maximum over rounds, matching the live accounting
    {
        PredictionGrid grid(m);
        BiasTable table(grid);
        Rational max_alpha;
        for (const auto& r : lookahead) {
            auto idx = grid.index_of(r.prediction);
            if (!idx)
                raise(ErrorKind::Parse, trace_path + ": lookahead prediction " +
                                            r.prediction.to_string() + " is off the grid");
            table.update(*idx, r.outcome);
            Rational cur = table.max_abs();
            if (cur > max_alpha) max_alpha = cur;
        }
        s.max_abs_alpha = max_alpha;
    }
    s.verdicts.alpha_ok = s.max_abs_alpha <= Rational(1);
    s.verdicts.ece_ok = s.ece_lookahead <= Rational(m);
    s.verdicts.drift_ok = s.l1_drift <= Rational(std::int64_t(s.T), m);
    s.verdicts.caldist_ok = s.caldist_upper <= s.bound_tm_m;
    return s;
}

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

}  // namespace

SweepReport sweep(const SweepConfig& config) {
    if (config.horizons.empty())
        raise(ErrorKind::InvalidArgument, "sweep needs at least one horizon");
    if (config.adversaries.empty())
        raise(ErrorKind::InvalidArgument, "sweep needs at least one adversary");
    if (config.sides.empty())
        raise(ErrorKind::InvalidArgument, "sweep needs at least one side policy");
    if (config.replicates == 0)
        raise(ErrorKind::InvalidArgument, "sweep needs at least one replicate");

    if (config.output_dir) std::filesystem::create_directories(*config.output_dir);

    SweepReport report;
    report.all_pass = true;
    for (std::uint64_t T : config.horizons) {
        for (const auto& adv : config.adversaries) {
            for (SidePolicy side : config.sides) {
                for (std::uint32_t r = 0; r < config.replicates; ++r) {
                    RunConfig rc;
                    rc.horizon = T;
                    rc.adversary = adv;
                    rc.side = side;
                    rc.seed = config.base_seed + r;
                    rc.caldist_guard = config.caldist_guard;
                    if (config.output_dir) {
                        std::string stem = *config.output_dir + "/T" + std::to_string(T) +
                                           "_" + sanitize(adv) + "_" + side_name(side) +
                                           "_r" + std::to_string(r);
                        rc.trace_path = stem + ".trace.csv";
                        rc.summary_path = stem + ".summary.json";
                        rc.exact_columns = true;
                    }
                    SweepCell cell{T, adv, side, r, rc.seed, run_match(rc)};
                    report.all_pass = report.all_pass && cell.summary.verdicts.all();
                    report.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return report;
}

std::string sweep_report_to_json(const SweepReport& report) {
    ordered_json j;
    j["all_pass"] = report.all_pass;
    j["cells"] = ordered_json::array();
    for (const auto& c : report.cells) {
        ordered_json cj;
        cj["T"] = c.T;
        cj["adversary"] = c.adversary;
        cj["side"] = side_name(c.side);
        cj["replicate"] = c.replicate;
        cj["seed"] = c.seed;
        cj["m"] = c.summary.m;
        put_rational(cj, "caldist_upper", c.summary.caldist_upper);
        cj["bound_2sqrt"] = decimal_double(c.summary.bound_2sqrt);
        cj["ratio_to_2sqrt"] =
            decimal_double(c.summary.caldist_upper.to_double() / c.summary.bound_2sqrt);
        cj["pass"] = c.summary.verdicts.all();
        j["cells"].push_back(std::move(cj));
    }
    return j.dump(2);
}

Transcript load_transcript_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::Io, "cannot open transcript file '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorKind::Parse, path + ":1: empty transcript file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "t" || header[1] != "p" || header[2] != "y")
        raise(ErrorKind::Parse, path + ":1: expected header 't,p,y'");
    Transcript out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 3)
            raise(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected 3 columns");
        try {
            Rational p = Rational::parse(cells[1]);
            if (cells[2] != "0" && cells[2] != "1")
                raise(ErrorKind::Parse, "outcome must be 0 or 1");
            out.push(p, outcome_from_bit(cells[2][0] - '0'));
        } catch (const Error& e) {
            raise(ErrorKind::Parse,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace calib
