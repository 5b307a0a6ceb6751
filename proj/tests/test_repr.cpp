#include <doctest.h>

#include "sjd/repr.hpp"
#include "sjd/suites.hpp"

using namespace sjd;

TEST_SUITE("repr") {

TEST_CASE("parameter validation") {
    ReprParams p;
    CHECK_NOTHROW(p.validate());
    p.k = 1;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.k = 3;
    p.m = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    const ReprParams q{1, 0.25, 3, 1.0};
    CHECK(std::abs(q.c_space() - 1.0 / (kPi * 16)) < 1e-16);
}

TEST_CASE("T★1 at the Cayley image of (½, 0) is 2^{−k}") {
    const ReprParams p{1, 0.25, 3, 1.0};
    const SpaceFunction t = t_star(disk_function(PolyFunction::constant(1, 1.0)), p);
    const SJSpacePoint y = make_space_point(CMatrix::Constant(1, 1, cplx(0, 3)), CRow::Zero(1));
    CHECK(std::abs(t(y) - 0.125) < 1e-14);
}

TEST_CASE("round trip of the intertwiner") {
    const ReprParams p{2, 0.25, 3.5, 1.0};
    PolyFunction f = PolyFunction::z_monomial(MultiIndex({1, 2}), cplx(1, 1));
    f += PolyFunction::w_monomial(SymIndex(2, {1, 0, 0}));
    const DiskFunction psi = disk_function(f);
    const DiskFunction back = t_inv(t_star(psi, p), p);
    Rng rng(41);
    for (int i = 0; i < 10; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(2, 0.7, 1.0, rng);
        CHECK(std::abs(back(x) - psi(x)) <= 1e-10 * std::max(1.0, std::abs(psi(x))));
    }
}

TEST_CASE("deterministic verifications pass") {
    for (int n = 1; n <= 2; ++n) {
        const ReprParams p{n, 0.25, 3, 1.0};
        CHECK(verify_identities(p, 30, 5).pass());
        CHECK(verify_intertwining(p, 10, 5).pass());
        CHECK(verify_kernel_invariance(p, 30, 5).pass());
    }
    CHECK(verify_jacobian_constant({1, 0.25, 3, 1.0}, 10, 5).pass());
}

TEST_CASE("small Monte Carlo Gram") {
    const ReprParams p{1, 0.25, 3, 1.0};
    const GramResult g = gram_matrix(p, 1, 1, {20000, 3, 1 << 12});
    CHECK(g.labels.size() == 4);
    const auto N = static_cast<Eigen::Index>(g.labels.size());
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            CHECK(std::abs(g.gram.mean(i, j) - (i == j ? 1.0 : 0.0)) < 4 * g.gram.sigma(i, j) + 1e-10);
}

TEST_CASE("suite registry") {
    CHECK(is_suite("cayley"));
    CHECK(is_suite("all"));
    CHECK_FALSE(is_suite("nope"));
    CHECK_THROWS_AS(run_suite("nope", {}), InvalidArgument);
    SuiteConfig bad;
    bad.k = 1;
    CHECK_THROWS_AS(run_suite("gram-4-28", bad), InvalidArgument);
    SuiteConfig c;
    c.n = 2;
    c.seed = 7;
    const VerifyReport r = run_suite("cayley", c);
    CHECK(r.pass());
    CHECK(r.seed == 7);
}

TEST_CASE("tolerance override tightens deterministic checks") {
    SuiteConfig c;
    c.tol = 1e-30;
    CHECK_FALSE(run_suite("jacobian-422", c).pass());
}

}
