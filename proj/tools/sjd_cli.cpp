// sjd — run verification suites, evaluate objects, emit tables.
// Links only against the C interface.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "sjd/sjd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string suite = "all";
    std::string object;
    std::string args = "{}";
    std::string kind;
    int n = 1;
    double m = 0.25;
    double k = 3;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::optional<std::size_t> samples;
    int trunc = 10;
    std::string out;
    std::string format = "json";
    bool no_timestamp = false;
};

struct CtxDeleter {
    void operator()(sjd_context* c) const { sjd_context_destroy(c); }
};
struct ReportDeleter {
    void operator()(sjd_report* r) const { sjd_report_destroy(r); }
};
struct StrDeleter {
    void operator()(char* s) const { sjd_string_free(s); }
};
using Ctx = std::unique_ptr<sjd_context, CtxDeleter>;
using Str = std::unique_ptr<char, StrDeleter>;

int report_error(sjd_status s) {
    std::cerr << "sjd: " << sjd_status_string(s) << ": " << sjd_last_error() << "\n";
    // library failures are configuration problems from the caller's point of view
    return s == SJD_INTERNAL || s == SJD_IO ? kExitCheckFailed : kExitUsage;
}

// temp file + rename, so a failed run never leaves a partial output behind
bool write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return static_cast<bool>(std::cout);
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) return false;
        f << text;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            return false;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        return false;
    }
    return true;
}

std::optional<Ctx> make_context(const Options& o, int& code) {
    sjd_context* raw = nullptr;
    sjd_status s = sjd_context_create(&raw);
    if (s != SJD_OK) {
        code = report_error(s);
        return std::nullopt;
    }
    Ctx ctx(raw);
    if ((s = sjd_set_params(raw, o.n, o.m, o.k)) != SJD_OK || (s = sjd_set_seed(raw, o.seed)) != SJD_OK ||
        (s = sjd_set_samples(raw, o.samples.value_or(0))) != SJD_OK ||
        (s = sjd_set_tol(raw, o.tol.value_or(0.0))) != SJD_OK || (s = sjd_set_truncation(raw, o.trunc)) != SJD_OK ||
        (s = sjd_set_timestamp(raw, o.no_timestamp ? 0 : 1)) != SJD_OK) {
        code = report_error(s);
        return std::nullopt;
    }
    return ctx;
}

int emit(const Options& o, const std::string& text) {
    if (!write_output(o.out, text)) {
        std::cerr << "sjd: cannot write " << o.out << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_verify(const Options& o) {
    int code = kExitOk;
    auto ctx = make_context(o, code);
    if (!ctx) return code;
    sjd_report* raw = nullptr;
    const sjd_status s = sjd_verify(ctx->get(), o.suite.c_str(), &raw);
    if (s != SJD_OK) return report_error(s);
    std::unique_ptr<sjd_report, ReportDeleter> rep(raw);
    char* json = nullptr;
    if (const sjd_status js = sjd_report_json(raw, &json); js != SJD_OK) return report_error(js);
    Str text(json);
    const bool passed = sjd_report_passed(raw) != 0;
    if (const int e = emit(o, text.get()); e != kExitOk) return e;
    std::cerr << "sjd: suite " << o.suite << (passed ? " passed" : " FAILED") << "\n";
    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_eval(const Options& o) {
    int code = kExitOk;
    auto ctx = make_context(o, code);
    if (!ctx) return code;
    char* out = nullptr;
    const sjd_status s = sjd_eval(ctx->get(), o.object.c_str(), o.args.c_str(), &out);
    if (s != SJD_OK) return report_error(s);
    Str text(out);
    return emit(o, text.get());
}

int cmd_table(const Options& o) {
    int code = kExitOk;
    auto ctx = make_context(o, code);
    if (!ctx) return code;
    char* out = nullptr;
    const sjd_status s = sjd_table(ctx->get(), o.kind.c_str(), o.format.c_str(), &out);
    if (s != SJD_OK) return report_error(s);
    Str text(out);
    return emit(o, text.get());
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "dimension")->check(CLI::Range(1, 4));
    sub->add_option("--m", o.m, "index m > 0");
    sub->add_option("--k", o.k, "weight k");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--tol", o.tol, "override deterministic tolerances");
    sub->add_option("--samples", o.samples, "Monte Carlo sample count");
    sub->add_option("--trunc", o.trunc, "truncation degree")->check(CLI::Range(0, 30));
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and timings");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel–Jacobi domain toolkit"};
    app.set_version_flag("--version", std::string(sjd_version()));
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", o.suite, "suite name or 'all'");
    add_common(verify, o);
    verify->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* eval = app.add_subcommand("eval", "evaluate an object on JSON arguments");
    eval->add_option("object", o.object, "object name")->required();
    eval->add_option("args,--args", o.args, "JSON argument object");
    add_common(eval, o);
    eval->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

    auto* table = app.add_subcommand("table", "emit a table");
    table->add_option("kind", o.kind, "gram-phi | gram-F | expansion-convergence | calibration")->required();
    add_common(table, o);
    table->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (table->parsed() && table->count("--format") == 0) o.format = "csv";
    if (verify->parsed()) return cmd_verify(o);
    if (eval->parsed()) return cmd_eval(o);
    return cmd_table(o);
}
