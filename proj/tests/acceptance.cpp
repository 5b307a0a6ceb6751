// One line per acceptance criterion; exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sjd/suites.hpp"

using namespace sjd;

namespace {

struct Run {
    std::string suite;
    int n = 1;
};

struct Criterion {
    int id;
    std::string what;
    std::vector<Run> runs;
    double budget;  // seconds
};

std::string first_failure(const VerifyReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass) return r.suite + ": " + c.name;
    return {};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "group axioms, Θ homomorphism, action laws", {{"group-axioms"}, {"theta-iso"}, {"actions"}}, 30},
        {2, "Cayley round trip and equivariance", {{"cayley", 1}, {"cayley", 2}}, 30},
        {3, "automorphy cocycles", {{"cocycle", 1}, {"cocycle", 2}}, 60},
        {4, "matching polynomials and heat equation", {{"genfun"}, {"pde"}}, 60},
        {5, "kernel expansions", {{"expansions"}}, 120},
        {6, "Gaussian integrals", {{"gaussian-integrals"}}, 60},
        {7, "Fock orthonormality (calibrated)", {{"orthonormality-fock"}}, 30},
        {8, "Cayley identities, n = 1, 2", {{"identities-419-421", 1}, {"identities-419-421", 2}}, 30},
        {9, "Jacobian constant 16 / 1024", {{"jacobian-422", 1}, {"jacobian-422", 2}}, 120},
        {10, "Monte Carlo Gram of F_sa", {{"gram-4-28"}}, 300},
        {11, "intertwiner round trip, isometry, intertwining", {{"intertwining"}, {"isometry"}}, 300},
        {12, "kernel invariance", {{"kernel-invariance", 1}, {"kernel-invariance", 2}}, 30},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        for (const auto& r : c.runs) {
            SuiteConfig cfg;
            cfg.n = r.n;
            try {
                const VerifyReport rep = run_suite(r.suite, cfg);
                if (!rep.pass() && why.empty()) why = first_failure(rep) + " (n=" + std::to_string(r.n) + ")";
            } catch (const std::exception& e) {
                if (why.empty()) why = r.suite + ": " + e.what();
            }
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (why.empty() && dt > c.budget) why = "over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
        const bool ok = why.empty();
        failed += !ok;
        std::printf("criterion %2d: %s  %s (%.1f s)%s%s\n", c.id, ok ? "PASS" : "FAIL", c.what.c_str(), dt,
                    ok ? "" : " — ", why.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
