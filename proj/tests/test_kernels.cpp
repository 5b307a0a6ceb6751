#include <doctest.h>

#include "sjd/kernels.hpp"

using namespace sjd;

TEST_SUITE("kernels") {

TEST_CASE("A(W, z) examples") {
    // n = 1: A = (|z|² + Re(w̄z²))/(1 − |w|²)
    CHECK(std::abs(a_form(CMatrix::Constant(1, 1, 0.5), CRow::Constant(1, 1.0)) - 2.0) < 1e-14);
    CHECK(a_form(SJDiskPoint::origin(2)) == 0.0);
    const SJDiskPoint x = sample_sj_disk_point(2, 0.8, 1.0, 4);
    CHECK(std::abs(a_polar(x, x) - a_form(x)) < 1e-12);
}

TEST_CASE("weights at the base points") {
    CHECK(std::abs(kmk_star_weight(SJDiskPoint::origin(2), 0.25, 3) - 1.0) < 1e-15);
    const SJSpacePoint y = cayley_forward(SJDiskPoint::origin(2));
    CHECK(std::abs(kmk_weight(y, 0.25, 3) - 1.0) < 1e-15);
}

TEST_CASE("cocycle of the transported factor") {
    Rng rng(31);
    const double m = 0.25, k = 3;
    for (int n = 1; n <= 2; ++n)
        for (int i = 0; i < 20; ++i) {
            const JacobiStarElement a = random_jacobi_star(n, 0.4, rng), b = random_jacobi_star(n, 0.4, rng);
            const SJDiskPoint x = sample_sj_disk_point(n, 0.6, 1.0, rng);
            const cplx lhs = jmk_star(jacobi_star_mul(a, b), x, m, k);
            const cplx rhs = jmk_star(b, x, m, k) * jmk_star(a, act_sj_disk(b, x), m, k);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        }
}

TEST_CASE("central element acts by exp(−4πmϰ)") {
    const cplx vk(0, 0.3);
    const cplx j = jmk_star(JacobiStarElement::central(1, vk), SJDiskPoint::origin(1), 0.25, 3);
    CHECK(std::abs(j - std::exp(-kPi * vk)) < 1e-15);
    CHECK(std::abs(std::abs(j) - 1.0) < 1e-15);
    // the naive factor is not unimodular there
    CHECK(std::abs(std::abs(jmk_star_naive(JacobiStarElement::central(1, vk), SJDiskPoint::origin(1), 0.25, 3)) - 1) >
          1e-3);
}

TEST_CASE("invariance of the weight in the kernel chart") {
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        const JacobiStarElement g = random_jacobi_star(2, 0.4, rng);
        const SJDiskPoint x = sample_sj_disk_point(2, 0.6, 1.0, rng);
        const double r = kmk_star_weight(act_kernel_chart(g, x), 0.25, 3) *
                         std::norm(jmk_star_kernel_chart(g, x, 0.25, 3)) / kmk_star_weight(x, 0.25, 3);
        CHECK(std::abs(r - 1) < 1e-8);
    }
}

TEST_CASE("symplectic kernels at the base points") {
    const UpperHalfPoint O(CMatrix(cplx(0, 1) * CMatrix::Identity(1, 1)));
    const CMatrix K = k1(O, O);
    CHECK(std::abs(K(0, 1) - cplx(0, -2)) < 1e-15);
    CHECK(std::abs(K(1, 0) - cplx(0, -0.5)) < 1e-15);
    CHECK(K(0, 0) == 0.0);
    CHECK(max_abs(CMatrix(k1_star(DiskPoint::origin(2), DiskPoint::origin(2)) - CMatrix::Identity(4, 4))) < 1e-15);
    CHECK(max_abs(CMatrix(j1(SpElement::identity(2), UpperHalfPoint(CMatrix(cplx(0, 1) * CMatrix::Identity(2, 2)))) -
                          CMatrix::Identity(2, 2))) < 1e-15);
}

}
