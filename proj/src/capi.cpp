#include "sjd/sjd.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <new>
#include <string>

#include "sjd/eval.hpp"
#include "sjd/suites.hpp"

struct sjd_context {
    sjd::SuiteConfig cfg;
    bool timestamp = true;
};

struct sjd_report {
    sjd::VerifyReport report;
    bool timestamp = true;
};

namespace {

thread_local std::string g_last_error;

sjd_status fail(sjd_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
sjd_status guarded(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const sjd::Error& e) {
        return fail(static_cast<sjd_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(SJD_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SJD_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

#define SJD_REQUIRE(cond, msg) \
    if (!(cond)) return fail(SJD_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

sjd_status sjd_context_create(sjd_context** out) {
    SJD_REQUIRE(out, "null output pointer");
    return guarded([&] {
        *out = new sjd_context();
        return SJD_OK;
    });
}

void sjd_context_destroy(sjd_context* ctx) { delete ctx; }

sjd_status sjd_set_params(sjd_context* ctx, int n, double m, double k) {
    SJD_REQUIRE(ctx, "null context");
    SJD_REQUIRE(n >= 1 && n <= 4, "dimension n must be in 1..4");
    SJD_REQUIRE(m > 0, "index m must be positive");
    SJD_REQUIRE(std::isfinite(k), "weight k must be finite");
    ctx->cfg.n = n;
    ctx->cfg.m = m;
    ctx->cfg.k = k;
    return SJD_OK;
}

sjd_status sjd_set_seed(sjd_context* ctx, uint64_t seed) {
    SJD_REQUIRE(ctx, "null context");
    ctx->cfg.seed = seed;
    return SJD_OK;
}

sjd_status sjd_set_samples(sjd_context* ctx, size_t samples) {
    SJD_REQUIRE(ctx, "null context");
    if (samples == 0) ctx->cfg.samples.reset();
    else ctx->cfg.samples = samples;
    return SJD_OK;
}

sjd_status sjd_set_tol(sjd_context* ctx, double tol) {
    SJD_REQUIRE(ctx, "null context");
    SJD_REQUIRE(!std::isnan(tol), "tolerance is NaN");
    if (tol <= 0) ctx->cfg.tol.reset();
    else ctx->cfg.tol = tol;
    return SJD_OK;
}

sjd_status sjd_set_truncation(sjd_context* ctx, int degree) {
    SJD_REQUIRE(ctx, "null context");
    SJD_REQUIRE(degree >= 0 && degree <= 30, "truncation degree must be in 0..30");
    ctx->cfg.trunc = degree;
    return SJD_OK;
}

sjd_status sjd_set_timestamp(sjd_context* ctx, int enabled) {
    SJD_REQUIRE(ctx, "null context");
    ctx->timestamp = enabled != 0;
    return SJD_OK;
}

sjd_status sjd_verify(sjd_context* ctx, const char* suite, sjd_report** out) {
    SJD_REQUIRE(ctx && suite && out, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto* r = new sjd_report{sjd::run_suite(suite, ctx->cfg), ctx->timestamp};
        *out = r;
        return SJD_OK;
    });
}

int sjd_report_passed(const sjd_report* r) { return r && r->report.pass() ? 1 : 0; }

sjd_status sjd_report_json(const sjd_report* r, char** out) {
    SJD_REQUIRE(r && out, "null argument");
    return guarded([&] {
        auto j = sjd::to_json(r->report, r->timestamp);
        if (r->timestamp) j["timestamp"] = utc_now();
        *out = dup_string(j.dump(2) + "\n");
        return SJD_OK;
    });
}

void sjd_report_destroy(sjd_report* r) { delete r; }

sjd_status sjd_eval(sjd_context* ctx, const char* object, const char* args_json, char** out) {
    SJD_REQUIRE(ctx && object && out, "null argument");
    return guarded([&] {
        nlohmann::json args = nlohmann::json::object();
        if (args_json && *args_json) {
            try {
                args = nlohmann::json::parse(args_json);
            } catch (const nlohmann::json::parse_error& e) {
                throw sjd::SchemaError(std::string("arguments are not valid JSON: ") + e.what());
            }
        }
        nlohmann::ordered_json j;
        j["object"] = object;
        j["value"] = sjd::eval_object(object, args, ctx->cfg);
        *out = dup_string(j.dump() + "\n");
        return SJD_OK;
    });
}

sjd_status sjd_table(sjd_context* ctx, const char* kind, const char* format, char** out) {
    SJD_REQUIRE(ctx && kind && out, "null argument");
    return guarded([&] {
        *out = dup_string(sjd::make_table(kind, ctx->cfg, format ? format : "csv"));
        return SJD_OK;
    });
}

void sjd_string_free(char* s) { std::free(s); }

const char* sjd_last_error(void) { return g_last_error.c_str(); }

const char* sjd_version(void) { return "0.1.0"; }

const char* sjd_status_string(sjd_status s) {
    switch (s) {
        case SJD_OK: return "ok";
        case SJD_INVALID_ARGUMENT: return "invalid argument";
        case SJD_DOMAIN: return "point outside domain";
        case SJD_SINGULAR: return "singular matrix";
        case SJD_SCHEMA: return "schema error";
        case SJD_CHECK_FAILED: return "check failed";
        case SJD_IO: return "i/o error";
        case SJD_INTERNAL: return "internal error";
    }
    return "unknown status";
}

}  // extern "C"
