#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sjd/report.hpp"

namespace sjd {

struct SuiteConfig {
    int n = 1;
    double m = 0.25;
    double k = 3;
    std::uint64_t seed = 1;
    std::optional<double> tol;          // overrides every deterministic tolerance when set
    std::optional<std::size_t> samples;  // per-suite defaults otherwise
    int trunc = 10;
};

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite(const std::string& name);
// Throws InvalidArgument for unknown suites and out-of-range parameters.
VerifyReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace sjd
