#include <doctest.h>

#include "sjd/numkit.hpp"

using namespace sjd;

TEST_SUITE("numkit") {

TEST_CASE("symmetric storage is exactly symmetric") {
    CMatrix M(2, 2);
    M << cplx(1, 2), cplx(3, -1), cplx(3, -1), cplx(0, 5);
    const CSymMatrix S = CSymMatrix::from_full(M);
    CHECK(S(0, 1) == S(1, 0));
    CHECK(max_abs(CMatrix(S.full() - M)) == 0.0);
    M(1, 0) += 0.1;
    CHECK_THROWS_AS(CSymMatrix::from_full(M), InvalidArgument);
}

TEST_CASE("solve and the condition guard") {
    CMatrix A(2, 2);
    A << 2, 1, 1, 3;
    CMatrix b(2, 1);
    b << 3, 5;
    const CMatrix x = solve(A, b);
    CHECK(std::abs(x(0, 0) - 0.8) < 1e-14);
    CHECK(std::abs(x(1, 0) - 1.4) < 1e-14);
    CMatrix S(2, 2);
    S << 1, 1, 1, 1;
    CHECK_THROWS_AS(solve(S, b), SingularMatrix);
    // X·A = B
    const CMatrix xr = solve_right(A, b.transpose());
    CHECK(max_abs(CMatrix(xr * A - b.transpose())) < 1e-14);
}

TEST_CASE("determinant powers") {
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 4;
    D(1, 1) = 9;
    CHECK(std::abs(det_power(D, 0.5) - 6.0) < 1e-13);
    CHECK(std::abs(det_power(D, -1) - 1.0 / 36) < 1e-15);
    CMatrix N = CMatrix::Identity(1, 1) * -1.0;
    // integer powers do not see the branch
    CHECK(std::abs(det_power(N, 3) + 1.0) < 1e-14);
    CHECK(std::abs(principal_logdet(N).imag() - kPi) < 1e-14);
}

TEST_CASE("positivity certificate") {
    RMatrix H(2, 2);
    H << 2, 1, 1, 2;
    auto c = posdef_certificate(H);
    CHECK(c.positive);
    CHECK(std::abs(c.min_eigenvalue - 1.0) < 1e-13);
    H(0, 0) = 0.5;
    CHECK_FALSE(posdef_certificate(H).positive);
}

TEST_CASE("matrix exponential of a rotation generator") {
    RMatrix A(2, 2);
    A << 0, -1, 1, 0;
    const RMatrix E = matrix_exp(A);
    CHECK(std::abs(E(0, 0) - std::cos(1.0)) < 1e-14);
    CHECK(std::abs(E(1, 0) - std::sin(1.0)) < 1e-14);
}

TEST_CASE("multi-indices") {
    const MultiIndex s({2, 3});
    CHECK(s.total() == 5);
    CHECK(s.factorial_exact() == 12);
    CHECK(enumerate_multiindices(2, 2).size() == 6);
    CHECK(enumerate_multiindices(3, 3).size() == 20);
    CHECK(factorial_i64(10) == 3628800);
}

TEST_CASE("symmetric index weights") {
    // a = [[1, 2], [2, 3]]: w_k = Σ_i a_ik + a_kk
    const SymIndex a(2, {1, 2, 3});
    CHECK(a.hat() == 4);
    CHECK(a.degree() == 6);
    CHECK(a.weight(0) == 4);
    CHECK(a.weight(1) == 8);
    CHECK(a.factorial_exact() == 12);
    CHECK(enumerate_symindices_by_degree(2, 1).size() == 4);
    CHECK(enumerate_symindices_by_degree(1, 4).size() == 5);
}

TEST_CASE("monomials") {
    CRow z(2);
    z << cplx(1, 1), 2.0;
    CHECK(std::abs(monomial(z, MultiIndex({2, 1})) - cplx(0, 4)) < 1e-14);
    CSymMatrix W(2);
    W(0, 1) = 3.0;
    W(1, 1) = 2.0;
    CHECK(std::abs(monomial(W, SymIndex(2, {0, 2, 1})) - 18.0) < 1e-13);
}

}
