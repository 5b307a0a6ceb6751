#include "sjd/report.hpp"

#include <cmath>

namespace sjd {

bool VerifyReport::pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

Check& VerifyReport::residual(const std::string& name, double r, double tol, std::string note) {
    Check c;
    c.name = name;
    c.residual = r;
    c.tol = tol;
    c.pass = std::isfinite(r) && r <= tol;
    c.note = std::move(note);
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerifyReport::mc(const std::string& name, cplx estimate, double sigma, cplx target, double nsigma,
                        double abs_floor) {
    Check c;
    c.name = name;
    c.estimate = estimate;
    c.target = target;
    c.sigma = sigma;
    c.tol = nsigma * sigma + abs_floor;
    const double dev = std::abs(estimate - target);
    c.pass = std::isfinite(dev) && dev <= c.tol;
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerifyReport::flag(const std::string& name, bool ok, std::string note) {
    Check c;
    c.name = name;
    c.pass = ok;
    c.note = std::move(note);
    checks.push_back(std::move(c));
    return checks.back();
}

Check& VerifyReport::diag_residual(const std::string& name, double r, double tol, std::string note) {
    Check c;
    c.name = name;
    c.residual = r;
    c.tol = tol;
    c.pass = std::isfinite(r) && r <= tol;
    c.note = std::move(note);
    diagnostics.push_back(std::move(c));
    return diagnostics.back();
}

Check& VerifyReport::diag_value(const std::string& name, cplx value, std::string note) {
    Check c;
    c.name = name;
    c.estimate = value;
    c.pass = true;
    c.note = std::move(note);
    diagnostics.push_back(std::move(c));
    return diagnostics.back();
}

void VerifyReport::merge(const VerifyReport& o) {
    for (const Check& c : o.checks) {
        checks.push_back(c);
        checks.back().name = o.suite + "/" + c.name;
    }
    for (const Check& c : o.diagnostics) {
        diagnostics.push_back(c);
        diagnostics.back().name = o.suite + "/" + c.name;
    }
    elapsed += o.elapsed;
}

nlohmann::ordered_json cplx_json(cplx c) { return nlohmann::ordered_json::array({c.real(), c.imag()}); }

nlohmann::ordered_json row_json(const CRow& r) {
    auto j = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < r.size(); ++i) j.push_back(cplx_json(r(i)));
    return j;
}

nlohmann::ordered_json matrix_json(const CMatrix& M) {
    auto j = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) j.push_back(row_json(M.row(i)));
    return j;
}

namespace {

nlohmann::ordered_json num(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const Check& c, bool) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    if (c.residual) j["residual"] = num(*c.residual);
    if (c.estimate) {
        j["estimate"] = cplx_json(*c.estimate);
        if (c.target) j["target"] = cplx_json(*c.target);
        if (c.sigma > 0 || c.target) j["sigma"] = num(c.sigma);
    }
    if (c.residual || c.target) j["tol"] = num(c.tol);
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

nlohmann::ordered_json to_json(const VerifyReport& r, bool timing) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["params"] = r.params;
    j["seed"] = r.seed;
    auto checks = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) checks.push_back(to_json(c, timing));
    j["checks"] = checks;
    auto diags = nlohmann::ordered_json::array();
    for (const Check& c : r.diagnostics) diags.push_back(to_json(c, timing));
    j["diagnostics"] = diags;
    j["pass"] = r.pass();
    if (timing) j["elapsed"] = r.elapsed;
    return j;
}

}  // namespace sjd
