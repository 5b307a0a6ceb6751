#include <doctest.h>

#include "sjd/domains.hpp"

using namespace sjd;

TEST_SUITE("domains") {

TEST_CASE("membership certificates") {
    CHECK(DiskPoint::contains(CMatrix::Constant(1, 1, 0.99)));
    CHECK_FALSE(DiskPoint::contains(CMatrix::Constant(1, 1, 1.01)));
    CHECK_THROWS_AS(DiskPoint(CMatrix::Constant(1, 1, 2.0)), DomainError);
    CHECK_THROWS_AS(UpperHalfPoint(CMatrix::Constant(1, 1, cplx(1, -1))), DomainError);
    // 2×2 grid: W = diag(a, b)
    for (double a : {0.0, 0.5, 0.99, 1.0})
        for (double b : {0.0, 0.9, 1.5}) {
            CMatrix W = CMatrix::Zero(2, 2);
            W(0, 0) = a;
            W(1, 1) = b;
            CHECK(DiskPoint::contains(W) == (a < 1 && b < 1));
        }
}

TEST_CASE("Cayley transform at the base point") {
    const SJSpacePoint y = cayley_forward(SJDiskPoint::origin(2));
    CHECK(max_abs(CMatrix(y.omega.full() - cplx(0, 1) * CMatrix::Identity(2, 2))) < 1e-15);
    CHECK(y.zeta.norm() == 0.0);
}

TEST_CASE("Cayley round trip") {
    Rng rng(11);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < 50; ++i) {
            const SJDiskPoint x = sample_sj_disk_point(n, 0.9, 2.0, rng);
            const SJDiskPoint back = cayley_inverse(cayley_forward(x));
            CHECK(max_abs(CMatrix(back.w.full() - x.w.full())) < 1e-11);
            CHECK((back.z - x.z).cwiseAbs().maxCoeff() < 1e-11);
        }
}

TEST_CASE("n = 1 Cayley image: W = ½ gives Ω = 3i") {
    const UpperHalfPoint O = cayley_forward(DiskPoint(CMatrix::Constant(1, 1, 0.5)));
    CHECK(std::abs(O.full()(0, 0) - cplx(0, 3)) < 1e-14);
}

TEST_CASE("reflection is an involution") {
    const SJDiskPoint x = sample_sj_disk_point(2, 0.7, 1.0, 3);
    const SJDiskPoint r = reflect(reflect(x));
    CHECK(max_abs(CMatrix(r.w.full() - x.w.full())) == 0.0);
    CHECK(max_abs(CMatrix(reflect(x).w.full() + x.w.full())) == 0.0);
}

TEST_CASE("samplers are seeded and land in the domain") {
    const DiskPoint a = sample_disk_point(3, 0.95, 5), b = sample_disk_point(3, 0.95, 5);
    CHECK(max_abs(CMatrix(a.full() - b.full())) == 0.0);
    CHECK(largest_singular_value(a.full()) < 1);
    const UpperHalfPoint O = sample_upper_half_point(3, 9);
    CHECK(UpperHalfPoint::contains(O.full()));
}

}
