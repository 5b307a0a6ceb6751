#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sjd/fockpoly.hpp"
#include "sjd/suites.hpp"

namespace sjd {

// Objects: P_s, Phi, f_s, F_sa, Q_a, J1, theta, K1, K2, A, Jmk, JmkStar, Kmk, KmkStar, action, cayley.
// Complex numbers are [re, im]; matrices are row-major nested arrays (a bare scalar is accepted when n = 1).
// Missing n/m/k fall back to `defaults`. Throws SchemaError on malformed input.
nlohmann::ordered_json eval_object(const std::string& object, const nlohmann::json& args, const SuiteConfig& defaults);
const std::vector<std::string>& eval_objects();

// gram-phi, gram-F, expansion-convergence, calibration; format "csv" or "json".
std::string make_table(const std::string& kind, const SuiteConfig& cfg, const std::string& format);
const std::vector<std::string>& table_kinds();

// PolyFunction as a list of {s, a, c}
nlohmann::ordered_json poly_json(const PolyFunction& p);

}  // namespace sjd
