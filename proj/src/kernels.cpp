#include "sjd/kernels.hpp"

#include <cmath>

namespace sjd {

namespace {

const cplx I1(0, 1);

inline cplx dot(const CRow& a, const CRow& b) { return (a * b.transpose())(0, 0); }

CMatrix block_diag(const CMatrix& A, const CMatrix& B) {
    const auto n = A.rows();
    CMatrix M = CMatrix::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = A;
    M.bottomRightCorner(n, n) = B;
    return M;
}

}  // namespace

CMatrix j1(const SpElement& s, const UpperHalfPoint& omega) {
    const CMatrix D = s.c.cast<cplx>() * omega.full() + s.d.cast<cplx>();
    return block_diag(inverse(D).transpose(), D);
}

CMatrix k1(const UpperHalfPoint& omega_p, const UpperHalfPoint& omega) {
    const int n = omega.n();
    const CMatrix diff = omega.full().conjugate() - omega_p.full();  // Ω̄ − Ω′
    CMatrix M = CMatrix::Zero(2 * n, 2 * n);
    M.topRightCorner(n, n) = diff;
    M.bottomLeftCorner(n, n) = inverse(-diff);
    return M;
}

CMatrix j1_star(const SpStarElement& w, const DiskPoint& W) {
    const CMatrix D = w.q.conjugate() * W.full() + w.p.conjugate();
    return block_diag(inverse(D).transpose(), D);
}

CMatrix k1_star(const DiskPoint& Wp, const DiskPoint& W) {
    const int n = W.n();
    const CMatrix G = CMatrix::Identity(n, n) - Wp.full() * W.full().conjugate();
    return block_diag(G, inverse(G).transpose());
}

cplx theta_factor(const JacobiElement& g, const SJSpacePoint& x) {
    const CMatrix O = x.omega.full();
    const CRow lam = g.h.lambda.cast<cplx>();
    const CRow nu = x.zeta + lam * O + g.h.mu.cast<cplx>();
    const CMatrix c = g.sigma.c.cast<cplx>();
    const CMatrix D = c * O + g.sigma.d.cast<cplx>();
    const CRow t = solve_right(D, nu);  // ν(cΩ+d)⁻¹
    return g.h.kappa + dot(lam, x.zeta) + dot(nu, lam) - dot(CRow(t * c), nu);
}

cplx k2_space(const SJSpacePoint& xp, const SJSpacePoint& x) {
    const CRow d = xp.zeta - x.zeta.conjugate();
    const CMatrix O = xp.omega.full();
    const CRow t = solve_right(CMatrix(O - O.conjugate()), d);
    return -0.5 * dot(t, d);
}

cplx theta_star(const JacobiStarElement& gs, const SJDiskPoint& x) {
    const CMatrix W = x.w.full();
    const CMatrix qb = gs.omega.q.conjugate();
    const CRow& a = gs.alpha;
    const CRow nu = x.z + a * W + a.conjugate();
    const CMatrix D = qb * W + gs.omega.p.conjugate();
    const CRow t = solve_right(D, nu);
    return gs.varkappa + dot(x.z, a) + dot(nu, a) - dot(CRow(t * qb), nu);
}

cplx a_polar(const SJDiskPoint& xp, const SJDiskPoint& x) {
    const int n = x.n();
    const CMatrix Wp = xp.w.full();
    const CMatrix Wb = x.w.full().conjugate();
    const CRow zb = x.z.conjugate();
    const CMatrix G = CMatrix::Identity(n, n) - Wp * Wb;
    // (z̄ + ½z′W̄)(I−W′W̄)⁻¹ᵗz′ + ½z̄(I−W′W̄)⁻¹W′ᵗz̄
    const CRow u = solve_right(G, CRow(zb + 0.5 * xp.z * Wb));
    const CRow v = solve_right(G, zb);
    return dot(u, xp.z) + 0.5 * dot(CRow(v * Wp), zb);
}

double a_form(const SJDiskPoint& x) { return a_polar(x, x).real(); }

double a_form(const CMatrix& W, const CRow& z) { return a_form(make_disk_point(W, z)); }

cplx jmk(const JacobiElement& g, const SJSpacePoint& x, double m, double k) {
    const CMatrix D = g.sigma.c.cast<cplx>() * x.omega.full() + g.sigma.d.cast<cplx>();
    return det_power(D, -k) * std::exp(2.0 * kPi * I1 * m * theta_factor(g, x));
}

cplx jmk_star(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k) {
    const CMatrix D = gs.omega.q.conjugate() * x.w.full() + gs.omega.p.conjugate();
    return det_power(D, -k) * std::exp(-4.0 * kPi * m * theta_star(gs, x));
}

cplx jmk_star_naive(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k) {
    const CMatrix D = gs.omega.q.conjugate() * x.w.full() + gs.omega.p.conjugate();
    return std::exp(2.0 * kPi * I1 * m * theta_star(gs, x)) * det_power(D, -k);
}

namespace {

// (det Y, ηY⁻¹ᵗη)
std::pair<double, double> space_invariants(const SJSpacePoint& x) {
    const RMatrix Y = x.omega.Y();
    const RRow eta = x.zeta.imag();
    const RRow t = Y.transpose().ldlt().solve(eta.transpose()).transpose();
    return {Y.determinant(), t.dot(eta)};
}

}  // namespace

double kmk_weight(const SJSpacePoint& x, double m, double k) {
    const auto [detY, q] = space_invariants(x);
    return std::pow(detY, -k) * std::exp(4.0 * kPi * m * q);
}

double kmk_weight_naive(const SJSpacePoint& x, double m, double k) {
    const auto [detY, q] = space_invariants(x);
    return std::exp(4.0 * kPi * m * q) * std::pow(detY, k);
}

cplx kmk_kernel(const SJSpacePoint& xp, const SJSpacePoint& x, double m, double k) {
    const CMatrix M = 0.5 * I1 * (x.omega.full().conjugate() - xp.omega.full());
    return det_power(M, -k) * std::exp(2.0 * kPi * I1 * m * k2_space(xp, x));
}

double kmk_star_weight(const SJDiskPoint& x, double m, double k) {
    const int n = x.n();
    const CMatrix W = x.w.full();
    const double g = (CMatrix::Identity(n, n) - W * W.conjugate()).determinant().real();
    return std::pow(g, -k) * std::exp(8.0 * kPi * m * a_form(x));
}

cplx kmk_star_kernel(const SJDiskPoint& xp, const SJDiskPoint& x, double m, double k) {
    const int n = x.n();
    const CMatrix G = CMatrix::Identity(n, n) - xp.w.full() * x.w.full().conjugate();
    return det_power(G, -k) * std::exp(8.0 * kPi * m * a_polar(xp, x));
}

SJDiskPoint act_kernel_chart(const JacobiStarElement& gs, const SJDiskPoint& x) {
    return reflect(act_sj_disk(gs, reflect(x)));
}

cplx jmk_star_kernel_chart(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k) {
    return jmk_star(gs, reflect(x), m, k);
}

}  // namespace sjd
