#include <doctest.h>

#include "sjd/quad.hpp"

using namespace sjd;

TEST_SUITE("quad") {

TEST_CASE("Gauss–Hermite rule") {
    std::vector<double> x, w;
    gauss_hermite_rule(20, x, w);
    double s0 = 0, s2 = 0, s4 = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s2 += w[i] * x[i] * x[i];
        s4 += w[i] * std::pow(x[i], 4);
    }
    CHECK(std::abs(s0 - std::sqrt(kPi)) < 1e-13);
    CHECK(std::abs(s2 - std::sqrt(kPi) / 2) < 1e-13);
    CHECK(std::abs(s4 - 3 * std::sqrt(kPi) / 4) < 1e-13);
}

TEST_CASE("Gauss–Legendre rule") {
    std::vector<double> x, w;
    gauss_legendre_rule(10, x, w);
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * x[i];
    CHECK(std::abs(s - 2.0 / 3) < 1e-14);
}

TEST_CASE("Bargmann moments are δ_sr s!") {
    for (const auto& s : enumerate_multiindices(1, 6))
        for (const auto& r : enumerate_multiindices(1, 6)) {
            const cplx v = bargmann_moment(s, r);
            CHECK(std::abs(v - (s == r ? s.factorial() : 0.0)) <= 1e-12 * s.factorial());
        }
    CHECK(std::abs(bargmann_moment(MultiIndex({2, 1}), MultiIndex({2, 1})) - 2.0) < 1e-12);
}

TEST_CASE("Isserlis moments against Gauss–Hermite") {
    const DiskPoint W(CMatrix::Constant(1, 1, cplx(0.3, 0.2)));
    const GaussianForm g = GaussianForm::from_a_form(W, 1.0);
    ZZbarPoly p;
    p.n = 1;
    p.add({2}, {1}, 1.0);
    p.add({1}, {1}, 2.0);
    p.add({0}, {2}, cplx(0, 1));
    CHECK(std::abs(gaussian_moment(p, g) - gauss_hermite_moment(p, g, 40)) < 1e-12);
    // |z|⁴ under the standard weight: ∫|z|⁴e^{−|z|²} = 2π
    ZZbarPoly q;
    q.n = 1;
    q.add({2}, {2}, 1.0);
    CHECK(std::abs(gaussian_moment(q, GaussianForm::standard(1)) - 2 * kPi) < 1e-12);
}

TEST_CASE("Gaussian integral against its closed form") {
    for (double r : {0.0, 0.4, 0.8}) {
        const DiskPoint W(CMatrix::Constant(1, 1, std::polar(r, 0.7)));
        CHECK(std::abs(matrix_gaussian_integral(W) - matrix_gaussian_closed_form(W)) < 1e-10);
        CHECK(std::abs(matrix_gaussian_box_quadrature(W) - matrix_gaussian_closed_form(W)) < 1e-8);
    }
    CHECK(std::abs(matrix_gaussian_closed_form(DiskPoint::origin(1)) - kPi) < 1e-14);
}

TEST_CASE("generating-series integral") {
    const SJDiskPoint xp = make_disk_point(CMatrix::Constant(1, 1, 0.2), CRow::Constant(1, cplx(0.3, 0.1)));
    const SJDiskPoint x = make_disk_point(CMatrix::Constant(1, 1, cplx(0.1, -0.2)), CRow::Constant(1, 0.2));
    CHECK(verify_h9(xp, x, 14) < 1e-6);
}

TEST_CASE("calibration is (8πm)ⁿ, four to the n times the nominal constant") {
    for (int n = 1; n <= 3; ++n) {
        const Calibration c = calibrate_norms(n, 0.25);
        CHECK(std::abs(c.calibrated - std::pow(2 * kPi, n)) < 1e-10 * c.calibrated);
        CHECK(std::abs(c.ratio - std::pow(4.0, n)) < 1e-10 * c.ratio);
    }
}

TEST_CASE("calibrated Fock Gram is the identity") {
    const double m = 0.25;
    for (double w : {0.0, 0.5}) {
        const DiskPoint W(CMatrix::Constant(1, 1, cplx(w, 0.1 * w)));
        const auto idx = enumerate_multiindices(1, 4);
        for (const auto& s : idx)
            for (const auto& r : idx) {
                const cplx g =
                    fock_inner(basis_phi(W, s, m), basis_phi(W, r, m), W, m, FockNormalization::Calibrated);
                CHECK(std::abs(g - (s == r ? 1.0 : 0.0)) < 1e-6);
            }
    }
}

TEST_CASE("Monte Carlo Beta integral and determinism") {
    // ∫(1−|w|²)^{k−5/2} d²w = π/(k − 3/2)
    const PolyFunction one = PolyFunction::constant(1, 1.0);
    const MCConfig cfg{50000, 7, 1 << 12};
    const MCEstimate e = mc_disk_inner(one, one, 1, 3.0, cfg);
    CHECK(std::abs(e.estimate - kPi / 1.5) < 4 * e.sigma + 1e-12);
    const MCEstimate f = mc_disk_inner(one, one, 1, 3.0, cfg);
    CHECK(e.estimate == f.estimate);
    CHECK(e.sigma == f.sigma);
}

TEST_CASE("real Jacobian of the Cayley map") {
    const SJDiskPoint x = sample_sj_disk_point(1, 0.6, 1.0, 12);
    CHECK(std::abs(cayley_jacobian(x) / cayley_jacobian_fd(x) - 1) < 1e-6);
}

TEST_CASE("Gaussian forms reject indefinite matrices") {
    CHECK_THROWS(GaussianForm(1, RMatrix::Identity(2, 2) * -1.0));
}

}
