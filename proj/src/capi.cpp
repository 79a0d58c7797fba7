#include "calib/calib.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "calib/adversary.hpp"
#include "calib/forecaster.hpp"
#include "calib/harness.hpp"
#include "calib/metrics.hpp"

namespace {

thread_local std::string g_last_error = "no error";

calib_status status_of(calib::ErrorKind kind) {
    using calib::ErrorKind;
    switch (kind) {
        case ErrorKind::InvalidArgument: return CALIB_ERR_INVALID_ARGUMENT;
        case ErrorKind::Protocol: return CALIB_ERR_PROTOCOL;
        case ErrorKind::Guard: return CALIB_ERR_GUARD;
        case ErrorKind::Parse: return CALIB_ERR_PARSE;
        case ErrorKind::Overflow: return CALIB_ERR_OVERFLOW;
        case ErrorKind::Invariant: return CALIB_ERR_INVARIANT;
        case ErrorKind::Io: return CALIB_ERR_IO;
    }
    return CALIB_ERR_INVARIANT;
}

template <typename F>
calib_status guarded(F&& f) {
    try {
        f();
        return CALIB_OK;
    } catch (const calib::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CALIB_ERR_INVARIANT;
    }
}

calib_rat to_c(const calib::Rational& r) { return {r.num(), r.den()}; }

calib::Rational from_c(calib_rat r) { return calib::Rational(r.num, r.den); }

calib::SidePolicy side_of(calib_side s) {
    switch (s) {
        case CALIB_SIDE_LEFT: return calib::SidePolicy::Left;
        case CALIB_SIDE_RIGHT: return calib::SidePolicy::Right;
        case CALIB_SIDE_ALTERNATE: return calib::SidePolicy::Alternate;
    }
    calib::raise(calib::ErrorKind::InvalidArgument, "unknown side policy value");
}

calib_status render_into(const std::string& s, char* buf, size_t buflen) {
    if (buf == nullptr || buflen == 0) {
        g_last_error = "render buffer is empty";
        return CALIB_ERR_INVALID_ARGUMENT;
    }
    std::size_t n = std::min(s.size(), buflen - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
    return CALIB_OK;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct calib_transcript {
    calib::Transcript inner;
};

struct calib_forecaster {
    calib::AosaForecaster inner;
};

struct calib_adversary {
    calib::Adversary inner;
};

extern "C" {

const char* calib_last_error(void) { return g_last_error.c_str(); }

calib_status calib_rat_render(calib_rat value, char* buf, size_t buflen) {
    std::string s;
    calib_status st = guarded([&] { s = from_c(value).to_string(); });
    return st != CALIB_OK ? st : render_into(s, buf, buflen);
}

calib_status calib_rat_render_decimal(calib_rat value, char* buf, size_t buflen) {
    std::string s;
    calib_status st = guarded([&] { s = from_c(value).to_decimal(); });
    return st != CALIB_OK ? st : render_into(s, buf, buflen);
}

calib_status calib_rat_parse(const char* text, calib_rat* out) {
    return guarded([&] {
        if (!text || !out)
            calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = to_c(calib::Rational::parse(text));
    });
}

calib_transcript* calib_transcript_new(void) {
    return new (std::nothrow) calib_transcript();
}

void calib_transcript_free(calib_transcript* t) { delete t; }

calib_status calib_transcript_push(calib_transcript* t, calib_rat prediction, int outcome) {
    return guarded([&] {
        if (!t) calib::raise(calib::ErrorKind::InvalidArgument, "null transcript");
        t->inner.push(from_c(prediction), calib::outcome_from_bit(outcome));
    });
}

size_t calib_transcript_len(const calib_transcript* t) {
    return t ? t->inner.size() : 0;
}

calib_status calib_transcript_load_csv(const char* path, calib_transcript** out) {
    return guarded([&] {
        if (!path || !out)
            calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        auto t = std::make_unique<calib_transcript>();
        t->inner = calib::load_transcript_csv(path);
        *out = t.release();
    });
}

calib_status calib_ece(const calib_transcript* t, calib_rat* out) {
    return guarded([&] {
        if (!t || !out) calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = to_c(calib::ece(t->inner));
    });
}

calib_status calib_l1_distance(const calib_transcript* a, const calib_transcript* b,
                               calib_rat* out) {
    return guarded([&] {
        if (!a || !b || !out) calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = to_c(calib::l1_distance(a->inner, b->inner));
    });
}

calib_status calib_caldist_exact(const calib_transcript* t, size_t max_rounds,
                                 calib_rat* out) {
    return guarded([&] {
        if (!t || !out) calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = to_c(calib::caldist_exact(
            t->inner, max_rounds == 0 ? calib::kCaldistGuardDefault : max_rounds));
    });
}

calib_status calib_caldist_upper(const calib_transcript* emitted,
                                 const calib_transcript* lookahead, calib_rat* out) {
    return guarded([&] {
        if (!emitted || !lookahead || !out)
            calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = to_c(calib::caldist_upper(emitted->inner, lookahead->inner));
    });
}

calib_status calib_forecaster_new(uint64_t horizon, calib_side side,
                                  uint32_t m_override, calib_forecaster** out) {
    return guarded([&] {
        if (!out) calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        std::optional<uint32_t> m;
        if (m_override != 0) m = m_override;
        *out = new calib_forecaster{calib::AosaForecaster(horizon, side_of(side), m)};
    });
}

void calib_forecaster_free(calib_forecaster* f) { delete f; }

calib_status calib_forecaster_predict(calib_forecaster* f, calib_rat* prediction_out) {
    return guarded([&] {
        if (!f || !prediction_out)
            calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *prediction_out = to_c(f->inner.predict());
    });
}

calib_status calib_forecaster_observe(calib_forecaster* f, int outcome,
                                      calib_rat* lookahead_out) {
    return guarded([&] {
        if (!f) calib::raise(calib::ErrorKind::InvalidArgument, "null forecaster");
        calib::Rational lk = f->inner.observe_lookahead(calib::outcome_from_bit(outcome));
        if (lookahead_out) *lookahead_out = to_c(lk);
    });
}

uint32_t calib_forecaster_m(const calib_forecaster* f) {
    return f ? f->inner.grid().intervals() : 0;
}

calib_status calib_adversary_new(const char* spec, uint64_t default_seed,
                                 calib_adversary** out) {
    return guarded([&] {
        if (!spec || !out) calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *out = new calib_adversary{calib::Adversary::parse(spec, default_seed)};
    });
}

void calib_adversary_free(calib_adversary* a) { delete a; }

calib_status calib_adversary_next(calib_adversary* a, calib_rat prediction,
                                  int* outcome_out) {
    return guarded([&] {
        if (!a || !outcome_out)
            calib::raise(calib::ErrorKind::InvalidArgument, "null argument");
        *outcome_out = calib::bit(a->inner.next(from_c(prediction)));
    });
}

calib_status calib_run_match(const calib_run_config* config, char** summary_json,
                             int* all_pass_out) {
    return guarded([&] {
        if (!config || !config->adversary)
            calib::raise(calib::ErrorKind::InvalidArgument, "null run config");
        calib::RunConfig rc;
        rc.horizon = config->horizon;
        rc.adversary = config->adversary;
        rc.side = side_of(config->side);
        if (config->m_override != 0) rc.m_override = config->m_override;
        rc.seed = config->seed;
        if (config->trace_path) rc.trace_path = config->trace_path;
        if (config->summary_path) rc.summary_path = config->summary_path;
        rc.exact_columns = config->exact_columns != 0;
        rc.caldist_guard =
            config->caldist_guard == 0 ? calib::kCaldistGuardDefault : config->caldist_guard;
        calib::RunSummary s = calib::run_match(rc);
        if (summary_json) *summary_json = dup_string(calib::summary_to_json(s));
        if (all_pass_out) *all_pass_out = s.verdicts.all() ? 1 : 0;
    });
}

calib_status calib_sweep(const calib_sweep_config* config, char** report_json,
                         int* all_pass_out) {
    return guarded([&] {
        if (!config) calib::raise(calib::ErrorKind::InvalidArgument, "null sweep config");
        calib::SweepConfig sc;
        sc.horizons.assign(config->horizons, config->horizons + config->n_horizons);
        for (size_t i = 0; i < config->n_adversaries; ++i)
            sc.adversaries.emplace_back(config->adversaries[i]);
        for (size_t i = 0; i < config->n_sides; ++i)
            sc.sides.push_back(side_of(config->sides[i]));
        sc.replicates = config->replicates;
        sc.base_seed = config->base_seed;
        if (config->output_dir) sc.output_dir = config->output_dir;
        sc.caldist_guard =
            config->caldist_guard == 0 ? calib::kCaldistGuardDefault : config->caldist_guard;
        calib::SweepReport report = calib::sweep(sc);
        if (report_json) *report_json = dup_string(calib::sweep_report_to_json(report));
        if (all_pass_out) *all_pass_out = report.all_pass ? 1 : 0;
    });
}

void calib_string_free(char* s) { std::free(s); }

}  // extern "C"
