#include <doctest.h>

#include <algorithm>
#include <string>

#include <json.hpp>

#include "sjd/sjd.h"

namespace {

struct Ctx {
    sjd_context* c = nullptr;
    Ctx() { REQUIRE(sjd_context_create(&c) == SJD_OK); }
    ~Ctx() { sjd_context_destroy(c); }
};

std::string take(char* s) {
    std::string r = s ? s : "";
    sjd_string_free(s);
    return r;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("null arguments are rejected, not crashed on") {
    CHECK(sjd_context_create(nullptr) == SJD_INVALID_ARGUMENT);
    CHECK(sjd_set_seed(nullptr, 1) == SJD_INVALID_ARGUMENT);
    CHECK(std::string(sjd_last_error()).size() > 0);
    CHECK(sjd_report_passed(nullptr) == 0);
    sjd_context_destroy(nullptr);
    sjd_report_destroy(nullptr);
    sjd_string_free(nullptr);
}

TEST_CASE("parameter validation") {
    Ctx ctx;
    CHECK(sjd_set_params(ctx.c, 0, 0.25, 3) == SJD_INVALID_ARGUMENT);
    CHECK(sjd_set_params(ctx.c, 1, -1, 3) == SJD_INVALID_ARGUMENT);
    CHECK(sjd_set_truncation(ctx.c, 99) == SJD_INVALID_ARGUMENT);
    CHECK(sjd_set_params(ctx.c, 2, 0.5, 4) == SJD_OK);
}

TEST_CASE("eval round trip") {
    Ctx ctx;
    char* out = nullptr;
    REQUIRE(sjd_eval(ctx.c, "P_s", R"({"n":1,"s":[2],"Z":1,"W":0.5})", &out) == SJD_OK);
    const auto j = nlohmann::json::parse(take(out));
    CHECK(j["value"][0].get<double>() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(j["value"][1].get<double>() == 0.0);

    REQUIRE(sjd_eval(ctx.c, "A", R"({"W":0.5,"z":1})", &out) == SJD_OK);
    CHECK(nlohmann::json::parse(take(out))["value"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-14));

    REQUIRE(sjd_eval(ctx.c, "cayley", R"({"direction":"forward"})", &out) == SJD_OK);
    const auto c = nlohmann::json::parse(take(out))["value"];
    CHECK(c["Omega"] == nlohmann::json::parse("[[[0.0,1.0]]]"));
    CHECK(c["zeta"] == nlohmann::json::parse("[[0.0,0.0]]"));
}

TEST_CASE("eval errors") {
    Ctx ctx;
    char* out = nullptr;
    CHECK(sjd_eval(ctx.c, "P_s", "{not json", &out) == SJD_SCHEMA);
    CHECK(sjd_eval(ctx.c, "P_s", R"({"s":"x"})", &out) == SJD_SCHEMA);
    CHECK(sjd_eval(ctx.c, "nope", "{}", &out) == SJD_SCHEMA);
    CHECK(sjd_eval(ctx.c, "A", R"({"W":2.0})", &out) == SJD_DOMAIN);
}

TEST_CASE("verify produces a deterministic report") {
    Ctx ctx;
    REQUIRE(sjd_set_params(ctx.c, 2, 0.25, 3) == SJD_OK);
    REQUIRE(sjd_set_seed(ctx.c, 7) == SJD_OK);
    REQUIRE(sjd_set_timestamp(ctx.c, 0) == SJD_OK);
    std::string first;
    for (int i = 0; i < 2; ++i) {
        sjd_report* r = nullptr;
        REQUIRE(sjd_verify(ctx.c, "cayley", &r) == SJD_OK);
        CHECK(sjd_report_passed(r) == 1);
        char* out = nullptr;
        REQUIRE(sjd_report_json(r, &out) == SJD_OK);
        const std::string s = take(out);
        sjd_report_destroy(r);
        const auto j = nlohmann::json::parse(s);
        CHECK(j["suite"] == "cayley");
        CHECK(j["seed"] == 7);
        CHECK_FALSE(j.contains("timestamp"));
        if (i == 0) first = s;
        else CHECK(s == first);
    }
}

TEST_CASE("verify errors map to status codes") {
    Ctx ctx;
    sjd_report* r = nullptr;
    CHECK(sjd_verify(ctx.c, "nope", &r) == SJD_INVALID_ARGUMENT);
    CHECK(r == nullptr);
    REQUIRE(sjd_set_params(ctx.c, 1, 0.25, 1) == SJD_OK);
    CHECK(sjd_verify(ctx.c, "gram-4-28", &r) == SJD_INVALID_ARGUMENT);
    CHECK(std::string(sjd_last_error()).find("k > n + 1/2") != std::string::npos);
}

TEST_CASE("tables") {
    Ctx ctx;
    REQUIRE(sjd_set_truncation(ctx.c, 4) == SJD_OK);
    char* out = nullptr;
    REQUIRE(sjd_table(ctx.c, "gram-phi", "csv", &out) == SJD_OK);
    const std::string csv = take(out);
    CHECK(csv.rfind("i,j,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
    REQUIRE(sjd_table(ctx.c, "calibration", "json", &out) == SJD_OK);
    const auto j = nlohmann::json::parse(take(out));
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][0][4].get<double>() == doctest::Approx(4.0));
    CHECK(sjd_table(ctx.c, "bogus", "csv", &out) == SJD_INVALID_ARGUMENT);
    CHECK(sjd_table(ctx.c, "calibration", "xml", &out) == SJD_INVALID_ARGUMENT);
}

TEST_CASE("status strings") {
    CHECK(std::string(sjd_status_string(SJD_OK)) == "ok");
    CHECK(std::string(sjd_version()).size() > 0);
}

}
