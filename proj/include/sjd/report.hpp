#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sjd/numkit.hpp"

namespace sjd {

struct Check {
    std::string name;
    // deterministic checks carry a residual; MC checks an estimate against a target
    std::optional<double> residual;
    std::optional<cplx> estimate;
    std::optional<cplx> target;
    double sigma = 0;
    double tol = 0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string suite;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<Check> diagnostics;  // reported, never gating
    double elapsed = 0;

    bool pass() const;
    Check& residual(const std::string& name, double r, double tol, std::string note = {});
    // |estimate − target| ≤ nsigma·σ (+ abs_floor for noise-free entries)
    Check& mc(const std::string& name, cplx estimate, double sigma, cplx target, double nsigma = 3.0,
              double abs_floor = 1e-12);
    Check& flag(const std::string& name, bool ok, std::string note = {});
    Check& diag_residual(const std::string& name, double r, double tol, std::string note = {});
    Check& diag_value(const std::string& name, cplx value, std::string note = {});
    void merge(const VerifyReport& o);
};

nlohmann::ordered_json to_json(const Check& c, bool timing);
nlohmann::ordered_json to_json(const VerifyReport& r, bool timing);

// [re, im]
nlohmann::ordered_json cplx_json(cplx c);
nlohmann::ordered_json matrix_json(const CMatrix& M);
nlohmann::ordered_json row_json(const CRow& r);

}  // namespace sjd
