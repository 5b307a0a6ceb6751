#include "sjd/groups.hpp"

#include <sstream>

namespace sjd {

namespace {

void require_same_n(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw InvalidArgument(os.str());
    }
}

double rmax(const RMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

RMatrix j_matrix(int n) {
    RMatrix J = RMatrix::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = RMatrix::Identity(n, n);
    J.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
    return J;
}

// ---- Sp(n, ℝ) -------------------------------------------------------------

SpElement::SpElement(RMatrix a_, RMatrix b_, RMatrix c_, RMatrix d_, double tol)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    const int n = static_cast<int>(a.rows());
    for (const RMatrix* m : {&a, &b, &c, &d})
        if (m->rows() != n || m->cols() != n) throw InvalidArgument("SpElement: blocks must be n×n");
    if (tol > 0) {
        const double r = symplectic_residual();
        if (!(r <= tol * std::max(1.0, rmax(full()) * rmax(full())))) {
            std::ostringstream os;
            os << "SpElement: ᵗσJσ ≠ J (residual " << r << ")";
            throw InvalidArgument(os.str());
        }
    }
}

SpElement SpElement::from_full(const RMatrix& s, double tol) {
    if (s.rows() != s.cols() || s.rows() % 2) throw InvalidArgument("SpElement: need a 2n×2n matrix");
    const int n = static_cast<int>(s.rows() / 2);
    return SpElement(s.topLeftCorner(n, n), s.topRightCorner(n, n), s.bottomLeftCorner(n, n),
                     s.bottomRightCorner(n, n), tol);
}

SpElement SpElement::identity(int n) {
    return SpElement(RMatrix::Identity(n, n), RMatrix::Zero(n, n), RMatrix::Zero(n, n),
                     RMatrix::Identity(n, n), 0);
}

SpElement SpElement::j_matrix(int n) { return from_full(sjd::j_matrix(n), 0); }

RMatrix SpElement::full() const {
    const int n = this->n();
    RMatrix s(2 * n, 2 * n);
    s << a, b, c, d;
    return s;
}

double SpElement::symplectic_residual() const {
    const RMatrix s = full();
    const RMatrix J = sjd::j_matrix(n());
    return rmax(s.transpose() * J * s - J);
}

SpElement sp_mul(const SpElement& x, const SpElement& y) {
    require_same_n(x.n(), y.n(), "sp_mul");
    return SpElement::from_full(x.full() * y.full(), 0);
}

SpElement sp_inverse(const SpElement& x) {
    // σ⁻¹ = J⁻¹ ᵗσ J = [[ᵗd, −ᵗb], [−ᵗc, ᵗa]]
    return SpElement(x.d.transpose(), -x.b.transpose(), -x.c.transpose(), x.a.transpose(), 0);
}

// ---- Sp(n, ℝ)★ ------------------------------------------------------------

SpStarElement::SpStarElement(CMatrix p_, CMatrix q_, double tol) : p(std::move(p_)), q(std::move(q_)) {
    const int n = static_cast<int>(p.rows());
    if (p.cols() != n || q.rows() != n || q.cols() != n)
        throw InvalidArgument("SpStarElement: blocks must be n×n");
    if (tol > 0) {
        const double r = invariant_residual();
        const double sc = std::max(1.0, std::pow(std::max(max_abs(p), max_abs(q)), 2));
        if (!(r <= tol * sc)) {
            std::ostringstream os;
            os << "SpStarElement: ᵗp p̄ − ᵗq̄ q ≠ I or ᵗp q̄ ≠ ᵗq̄ p (residual " << r << ")";
            throw InvalidArgument(os.str());
        }
    }
}

SpStarElement SpStarElement::identity(int n) {
    return SpStarElement(CMatrix::Identity(n, n), CMatrix::Zero(n, n), 0);
}

CMatrix SpStarElement::full() const {
    const int n = this->n();
    CMatrix w(2 * n, 2 * n);
    w << p, q, q.conjugate(), p.conjugate();
    return w;
}

double SpStarElement::invariant_residual() const {
    const int n = this->n();
    const CMatrix I = CMatrix::Identity(n, n);
    const double r1 = max_abs(p.transpose() * p.conjugate() - q.adjoint() * q - I);
    const double r2 = max_abs(p.transpose() * q.conjugate() - q.adjoint() * p);
    return std::max(r1, r2);
}

SpStarElement sp_star_mul(const SpStarElement& x, const SpStarElement& y) {
    require_same_n(x.n(), y.n(), "sp_star_mul");
    const CMatrix w = x.full() * y.full();
    const int n = x.n();
    return SpStarElement(w.topLeftCorner(n, n), w.topRightCorner(n, n), 0);
}

SpStarElement sp_star_inverse(const SpStarElement& x) {
    // ω⁻¹ = K ω† K with K = diag(I, −I): p ↦ p†, q ↦ −ᵗq
    return SpStarElement(x.p.adjoint(), -x.q.transpose(), 0);
}

// ---- Heisenberg -----------------------------------------------------------

HeisenbergElement heisenberg_mul(const HeisenbergElement& h, const HeisenbergElement& hp) {
    require_same_n(h.n(), hp.n(), "heisenberg_mul");
    HeisenbergElement r;
    r.lambda = h.lambda + hp.lambda;
    r.mu = h.mu + hp.mu;
    r.kappa = h.kappa + hp.kappa + h.lambda.dot(hp.mu) - h.mu.dot(hp.lambda);
    return r;
}

HeisenbergElement heisenberg_inverse(const HeisenbergElement& h) { return {-h.lambda, -h.mu, -h.kappa}; }

// ---- Jacobi ---------------------------------------------------------------

JacobiElement jacobi_mul(const JacobiElement& g, const JacobiElement& gp) {
    require_same_n(g.n(), gp.n(), "jacobi_mul");
    const int n = g.n();
    RRow lm(2 * n);
    lm << g.h.lambda, g.h.mu;
    const RRow t = lm * gp.sigma.full();
    HeisenbergElement moved{t.head(n), t.tail(n), g.h.kappa};
    return {sp_mul(g.sigma, gp.sigma), heisenberg_mul(moved, gp.h)};
}

JacobiElement jacobi_inverse(const JacobiElement& g) {
    const int n = g.n();
    const SpElement si = sp_inverse(g.sigma);
    RRow lm(2 * n);
    lm << g.h.lambda, g.h.mu;
    const RRow t = -lm * si.full();
    return {si, {t.head(n), t.tail(n), -g.h.kappa}};
}

JacobiStarElement::JacobiStarElement(SpStarElement w, CRow a, cplx vk)
    : omega(std::move(w)), alpha(std::move(a)), varkappa(vk) {
    if (alpha.size() != omega.n()) throw InvalidArgument("JacobiStarElement: α has wrong length");
    if (std::abs(varkappa.real()) > 1e-12 * std::max(1.0, std::abs(varkappa)))
        throw InvalidArgument("JacobiStarElement: ϰ must be purely imaginary");
    varkappa = cplx(0, varkappa.imag());
}

JacobiStarElement JacobiStarElement::identity(int n) { return central(n, 0.0); }

JacobiStarElement jacobi_star_mul(const JacobiStarElement& gsp, const JacobiStarElement& gs) {
    require_same_n(gsp.n(), gs.n(), "jacobi_star_mul");
    const CRow& ap = gsp.alpha;
    const CRow beta = ap * gs.omega.p + ap.conjugate() * gs.omega.q.conjugate();
    const CRow& a = gs.alpha;
    // βᵗᾱ − β̄ᵗα
    const cplx vk = gs.varkappa + gsp.varkappa + (beta * a.adjoint())(0, 0) -
                    (beta.conjugate() * a.transpose())(0, 0);
    return JacobiStarElement(sp_star_mul(gsp.omega, gs.omega), beta + a, vk);
}

JacobiStarElement jacobi_star_inverse(const JacobiStarElement& gs) {
    const int n = gs.n();
    const SpStarElement wi = sp_star_inverse(gs.omega);
    // (α′, ᾱ′) = −(α, ᾱ) ω⁻¹, ϰ′ = −ϰ
    CRow aa(2 * n);
    aa << gs.alpha, gs.alpha.conjugate();
    const CRow t = -aa * wi.full();
    return JacobiStarElement(wi, t.head(n), -gs.varkappa);
}

// ---- Θ --------------------------------------------------------------------

SpStarElement theta_iso(const SpElement& s) {
    const cplx I(0, 1);
    const CMatrix a = s.a.cast<cplx>(), b = s.b.cast<cplx>(), c = s.c.cast<cplx>(), d = s.d.cast<cplx>();
    CMatrix pp = 0.5 * (a + d) + 0.5 * I * (b - c);
    CMatrix pm = 0.5 * (a - d) - 0.5 * I * (b + c);
    return SpStarElement(pp, pm, 1e-9);
}

SpElement theta_inv(const SpStarElement& w) {
    const RMatrix rp = w.p.real(), ip = w.p.imag(), rq = w.q.real(), iq = w.q.imag();
    return SpElement(rp + rq, ip - iq, -ip - iq, rp - rq, 1e-9);
}

JacobiStarElement theta_iso(const JacobiElement& g) {
    const CRow alpha = 0.5 * (g.h.lambda.cast<cplx>() + cplx(0, 1) * g.h.mu.cast<cplx>());
    return JacobiStarElement(theta_iso(g.sigma), alpha, cplx(0, -0.5 * g.h.kappa));
}

JacobiElement theta_inv(const JacobiStarElement& gs) {
    // λ = 2 Re α, μ = 2 Im α, κ = 2iϰ
    return {theta_inv(gs.omega), {2.0 * gs.alpha.real(), 2.0 * gs.alpha.imag(), -2.0 * gs.varkappa.imag()}};
}

// ---- actions --------------------------------------------------------------

UpperHalfPoint act_upper_half(const SpElement& s, const UpperHalfPoint& omega) {
    require_same_n(s.n(), omega.n(), "act_upper_half");
    const CMatrix O = omega.full();
    const CMatrix num = s.a.cast<cplx>() * O + s.b.cast<cplx>();
    const CMatrix den = s.c.cast<cplx>() * O + s.d.cast<cplx>();
    return UpperHalfPoint(solve_right(den, num));
}

DiskPoint act_disk(const SpStarElement& w, const DiskPoint& W) {
    require_same_n(w.n(), W.n(), "act_disk");
    const CMatrix M = W.full();
    const CMatrix num = w.p * M + w.q;
    const CMatrix den = w.q.conjugate() * M + w.p.conjugate();
    return DiskPoint(solve_right(den, num));
}

SJSpacePoint act_sj_space(const JacobiElement& g, const SJSpacePoint& x) {
    require_same_n(g.n(), x.n(), "act_sj_space");
    const CMatrix O = x.omega.full();
    const CMatrix den = g.sigma.c.cast<cplx>() * O + g.sigma.d.cast<cplx>();
    const CRow nu = x.zeta + g.h.lambda.cast<cplx>() * O + g.h.mu.cast<cplx>();
    return {act_upper_half(g.sigma, x.omega), solve_right(den, nu)};
}

SJDiskPoint act_sj_disk(const JacobiStarElement& gs, const SJDiskPoint& x) {
    require_same_n(gs.n(), x.n(), "act_sj_disk");
    const CMatrix W = x.w.full();
    const CMatrix den = gs.omega.q.conjugate() * W + gs.omega.p.conjugate();
    const CRow nu = x.z + gs.alpha * W + gs.alpha.conjugate();
    return {act_disk(gs.omega, x.w), solve_right(den, nu)};
}

// ---- random elements ------------------------------------------------------

SpElement random_sp(int n, double scale, Rng& rng) {
    std::normal_distribution<double> g;
    RMatrix S(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i; j < 2 * n; ++j) S(i, j) = S(j, i) = scale * g(rng);
    return SpElement::from_full(matrix_exp(RMatrix(sjd::j_matrix(n) * S)), 1e-10);
}

SpElement random_sp(int n, double scale, std::uint64_t seed) {
    Rng rng(seed);
    return random_sp(n, scale, rng);
}

JacobiElement random_jacobi(int n, double scale, Rng& rng) {
    SpElement s = random_sp(n, scale, rng);
    std::normal_distribution<double> g;
    HeisenbergElement h{RRow(n), RRow(n), 0.0};
    for (int i = 0; i < n; ++i) h.lambda(i) = scale * g(rng);
    for (int i = 0; i < n; ++i) h.mu(i) = scale * g(rng);
    h.kappa = scale * g(rng);
    return {s, h};
}

JacobiElement random_jacobi(int n, double scale, std::uint64_t seed) {
    Rng rng(seed);
    return random_jacobi(n, scale, rng);
}

JacobiStarElement random_jacobi_star(int n, double scale, Rng& rng) {
    return theta_iso(random_jacobi(n, scale, rng));
}

// ---- distances ------------------------------------------------------------

double distance(const SpElement& x, const SpElement& y) { return rmax(x.full() - y.full()); }
double distance(const SpStarElement& x, const SpStarElement& y) { return max_abs(x.full() - y.full()); }

double distance(const HeisenbergElement& x, const HeisenbergElement& y) {
    return std::max({rmax(x.lambda - y.lambda), rmax(x.mu - y.mu), std::abs(x.kappa - y.kappa)});
}

double distance(const JacobiElement& x, const JacobiElement& y) {
    return std::max(distance(x.sigma, y.sigma), distance(x.h, y.h));
}

double distance(const JacobiStarElement& x, const JacobiStarElement& y) {
    return std::max({distance(x.omega, y.omega), max_abs(x.alpha - y.alpha), std::abs(x.varkappa - y.varkappa)});
}

double distance(const SJSpacePoint& x, const SJSpacePoint& y) {
    return std::max(max_abs(x.omega.full() - y.omega.full()), max_abs(x.zeta - y.zeta));
}

double distance(const SJDiskPoint& x, const SJDiskPoint& y) {
    return std::max(max_abs(x.w.full() - y.w.full()), max_abs(x.z - y.z));
}

}  // namespace sjd
