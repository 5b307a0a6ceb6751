#include <doctest.h>

#include "sjd/groups.hpp"

using namespace sjd;

TEST_SUITE("groups") {

TEST_CASE("symplectic validation") {
    CHECK(SpElement::identity(2).symplectic_residual() == 0.0);
    CHECK(SpElement::j_matrix(3).symplectic_residual() < 1e-15);
    RMatrix s = RMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(SpElement::from_full(s), InvalidArgument);
}

TEST_CASE("group laws") {
    Rng rng(21);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < 20; ++i) {
            const JacobiElement g = random_jacobi(n, 0.6, rng), h = random_jacobi(n, 0.6, rng),
                                f = random_jacobi(n, 0.6, rng);
            CHECK(distance(jacobi_mul(jacobi_mul(g, h), f), jacobi_mul(g, jacobi_mul(h, f))) < 1e-10);
            CHECK(distance(jacobi_mul(g, jacobi_inverse(g)), JacobiElement::identity(n)) < 1e-10);
            CHECK(distance(theta_iso(jacobi_mul(g, h)), jacobi_star_mul(theta_iso(g), theta_iso(h))) < 1e-10);
            CHECK(distance(theta_inv(theta_iso(g)), g) < 1e-10);
        }
}

TEST_CASE("actions are left actions") {
    Rng rng(22);
    for (int n = 1; n <= 2; ++n)
        for (int i = 0; i < 20; ++i) {
            const JacobiElement g = random_jacobi(n, 0.5, rng), h = random_jacobi(n, 0.5, rng);
            const SJSpacePoint y = sample_sj_space_point(n, 1.0, rng);
            CHECK(distance(act_sj_space(jacobi_mul(g, h), y), act_sj_space(g, act_sj_space(h, y))) < 1e-9);
            const JacobiStarElement a = random_jacobi_star(n, 0.5, rng), b = random_jacobi_star(n, 0.5, rng);
            const SJDiskPoint x = sample_sj_disk_point(n, 0.6, 1.0, rng);
            CHECK(distance(act_sj_disk(jacobi_star_mul(a, b), x), act_sj_disk(a, act_sj_disk(b, x))) < 1e-9);
        }
}

TEST_CASE("J acts as Ω ↦ −Ω⁻¹") {
    const UpperHalfPoint O(CMatrix::Constant(1, 1, cplx(0, 2)));
    const UpperHalfPoint r = act_upper_half(SpElement::j_matrix(1), O);
    CHECK(std::abs(r.full()(0, 0) - cplx(0, 0.5)) < 1e-15);
}

TEST_CASE("Heisenberg centre") {
    const HeisenbergElement h{RRow::Constant(1, 0.3), RRow::Constant(1, -0.2), 0.1};
    const HeisenbergElement e = heisenberg_mul(h, heisenberg_inverse(h));
    CHECK(distance(e, HeisenbergElement::identity(1)) < 1e-15);
}

}
