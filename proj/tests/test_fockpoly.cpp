#include <doctest.h>

#include "sjd/fockpoly.hpp"

using namespace sjd;

namespace {
PolyFunction z2_plus_w() {
    PolyFunction p = PolyFunction::z_monomial(MultiIndex({2}));
    return p + PolyFunction::w_monomial(SymIndex(1, {1}));
}
}  // namespace

TEST_SUITE("fockpoly") {

TEST_CASE("P_2 = Z² + W and P_3 = Z³ + 3ZW") {
    CHECK(coefficient_distance(p_s(MultiIndex({2})), z2_plus_w()) == 0.0);
    PolyFunction p3 = PolyFunction::z_monomial(MultiIndex({3}));
    p3 += PolyFunction::monomial(MultiIndex({1}), SymIndex(1, {1}), 3.0);
    CHECK(coefficient_distance(p_s(MultiIndex({3})), p3) == 0.0);
    CHECK(std::abs(p_s(MultiIndex({2})).evaluate(CRow::Constant(1, 1.0), CSymMatrix::from_full(CMatrix::Constant(1, 1, 0.5))) -
                   1.5) < 1e-15);
}

TEST_CASE("P_(1,1) = Z₁Z₂ + W₁₂") {
    PolyFunction q = PolyFunction::z_monomial(MultiIndex({1, 1}));
    q += PolyFunction::w_monomial(SymIndex(2, {0, 1, 0}));
    CHECK(coefficient_distance(p_s(MultiIndex({1, 1})), q) == 0.0);
}

TEST_CASE("closed form matches the generating function exactly") {
    for (const auto& s : enumerate_multiindices(1, 8)) CHECK(coefficient_distance(p_s(s), p_s_from_generating(s)) == 0.0);
    for (const auto& s : enumerate_multiindices(2, 4)) CHECK(coefficient_distance(p_s(s), p_s_from_generating(s)) == 0.0);
}

TEST_CASE("heat-type equation") {
    for (const auto& s : enumerate_multiindices(2, 6)) CHECK(pde_residual(p_s(s), 1.0) == 0.0);
    for (const auto& s : enumerate_multiindices(1, 8)) {
        const PolyFunction f = basis_f(s, 0.25);
        CHECK(pde_check(f, 0.25) <= 1e-12 * std::max(1.0, f.max_abs_coefficient()));
    }
    // a bare monomial in z is not a solution
    CHECK(pde_residual(PolyFunction::z_monomial(MultiIndex({2})), 1.0) > 0.5);
}

TEST_CASE("back-substitution recovers the f-coefficients") {
    const double m = 0.25;
    PolyFunction p = basis_f(MultiIndex({3}), m) * cplx(2.0) + basis_f(MultiIndex({1}), m) * cplx(0, 1);
    const auto c = expand_in_f_basis(p, m);
    CHECK(std::abs(c.at(MultiIndex({3})).coefficient(MultiIndex({0}), SymIndex(1)) - 2.0) < 1e-12);
    CHECK(std::abs(c.at(MultiIndex({1})).coefficient(MultiIndex({0}), SymIndex(1)) - cplx(0, 1)) < 1e-12);
}

TEST_CASE("Q-basis closed form at n = 1") {
    // Q_0 = 1/√(π B(1, k − 3/2)) = √(1.5/π) at k = 3
    const QBasis Q = q_basis(1, 3.0, 3);
    CHECK(Q.exact);
    const cplx q0 = Q[SymIndex(1, {0})].evaluate(CRow::Zero(1), CSymMatrix(1));
    CHECK(std::abs(q0 - std::sqrt(1.5 / kPi)) < 1e-14);
    CHECK(std::abs(berezin_constant(1, 3.0) - 1.5 / kPi) < 1e-14);
}

TEST_CASE("generating expansion at W′ = W = 0.3, z = 0") {
    const SJDiskPoint x = make_disk_point(CMatrix::Constant(1, 1, 0.3), CRow::Zero(1));
    TruncationSpec t;
    t.max_degree = 20;
    const auto e = kernel_expansion_truncated(x, x, Expansion::H11, t);
    CHECK(std::abs(e.partial_sum - 1.0 / std::sqrt(0.91)) < 1e-8);
    CHECK(std::abs(e.closed_form - 1.048284836721918) < 1e-12);
}

TEST_CASE("expansion names round-trip") {
    for (Expansion e : {Expansion::H11, Expansion::H27, Expansion::H35, Expansion::Fock426})
        CHECK(expansion_from_string(to_string(e)) == e);
    CHECK_THROWS(expansion_from_string("nope"));
}

TEST_CASE("polynomial arithmetic") {
    const PolyFunction p = z2_plus_w();
    CHECK((p - p).is_zero());
    CHECK(p.derivative_z(0).coefficient(MultiIndex({1}), SymIndex(1)) == 2.0);
    CHECK(p.max_z_degree() == 2);
    CHECK(p.depends_on_w());
}

}
