#include "sjd/repr.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace sjd {

namespace {

const cplx I1(0, 1);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string fmt_index(const MultiIndex& s, const SymIndex& a) {
    std::ostringstream os;
    os << "s=(";
    for (size_t i = 0; i < s.s.size(); ++i) os << (i ? "," : "") << s.s[i];
    os << ") a=(";
    for (size_t i = 0; i < a.a.size(); ++i) os << (i ? "," : "") << a.a[i];
    os << ")";
    return os.str();
}

nlohmann::ordered_json params_json(const ReprParams& p) {
    nlohmann::ordered_json j;
    j["n"] = p.n;
    j["m"] = p.m;
    j["k"] = p.k;
    j["c_star"] = p.c_star;
    return j;
}

MultiIndex unit_s(int n, int i, int v = 1) {
    MultiIndex s{std::vector<int>(static_cast<size_t>(n), 0)};
    s.s[static_cast<size_t>(i)] = v;
    return s;
}

SymIndex sym_zero(int n) {
    SymIndex a;
    a.dim = n;
    a.a.assign(static_cast<size_t>(n * (n + 1) / 2), 0);
    return a;
}

SymIndex sym_diag(int n, int v) {
    SymIndex a = sym_zero(n);
    a.a[0] = v;  // (0,0) entry
    return a;
}

}  // namespace

void ReprParams::validate() const {
    if (n < 1) throw InvalidArgument("dimension n must be ≥ 1");
    if (!(m > 0)) throw InvalidArgument("index m must be positive");
    if (!(k > n + 0.5)) {
        std::ostringstream os;
        os << "weight must satisfy k > n + 1/2 (got k = " << k << ", n = " << n << ")";
        throw InvalidArgument(os.str());
    }
    if (!(c_star > 0)) throw InvalidArgument("C★ must be positive");
}

double ReprParams::c_space() const { return c_star * std::pow(kPi, -n) * std::pow(2.0, -n * (n + 3)); }

DiskFunction disk_function(const PolyFunction& p) {
    return {[p](const SJDiskPoint& x) { return p(x); }, Provenance::Basis};
}

DiskFunction operator+(const DiskFunction& a, const DiskFunction& b) {
    return {[a, b](const SJDiskPoint& x) { return a(x) + b(x); }, Provenance::Composite};
}

DiskFunction operator*(cplx c, const DiskFunction& a) {
    return {[c, a](const SJDiskPoint& x) { return c * a(x); }, Provenance::Composite};
}

DiskFunction pi_star_apply(const JacobiStarElement& gs, const DiskFunction& psi, const ReprParams& p) {
    p.validate();
    return {[gs, psi, p](const SJDiskPoint& x) {
                return jmk_star_kernel_chart(gs, x, p.m, p.k) * psi(act_kernel_chart(gs, x));
            },
            Provenance::Transported};
}

SpaceFunction pi_apply(const JacobiElement& g, const SpaceFunction& phi, const ReprParams& p) {
    p.validate();
    return {[g, phi, p](const SJSpacePoint& y) { return jmk(g, y, p.m, p.k) * phi(act_sj_space(g, y)); },
            Provenance::Transported};
}

SpaceFunction t_star(const DiskFunction& psi, const ReprParams& p) {
    p.validate();
    return {[psi, p](const SJSpacePoint& y) {
                const SJDiskPoint xc = cayley_inverse(y);
                const int n = xc.n();
                const CMatrix ImW = CMatrix::Identity(n, n) - xc.w.full();
                const cplx q = (solve_right(ImW, xc.z) * xc.z.transpose())(0, 0);
                return psi(reflect(xc)) * det_power(ImW, p.k) * std::exp(4.0 * kPi * p.m * q);
            },
            Provenance::Transported};
}

namespace {

DiskFunction t_inv_impl(const SpaceFunction& phi, const ReprParams& p, double det_scale) {
    p.validate();
    return {[phi, p, det_scale](const SJDiskPoint& x) {
                const SJSpacePoint y = cayley_forward(reflect(x));
                const int n = x.n();
                const CMatrix M = CMatrix::Identity(n, n) - I1 * y.omega.full();
                const cplx q = (solve_right(M, y.zeta) * y.zeta.transpose())(0, 0);
                return phi(y) * det_power(CMatrix(det_scale * M), p.k) * std::exp(2.0 * kPi * p.m * q);
            },
            Provenance::Transported};
}

}  // namespace

DiskFunction t_inv(const SpaceFunction& phi, const ReprParams& p) { return t_inv_impl(phi, p, 0.5); }
DiskFunction t_inv_unscaled(const SpaceFunction& phi, const ReprParams& p) { return t_inv_impl(phi, p, 1.0); }

// ---- identities between the two realizations ---------------------------------

namespace {

struct IdentityResiduals {
    double y, eta, quad, quad_naive;
};

// Compares Im Ω, Im ζ and ηY⁻¹ᵗη at y with the disk-side expressions in (W, z).
IdentityResiduals identity_residuals(const SJSpacePoint& y, const CMatrix& W, const CRow& z) {
    const int n = y.n();
    const CMatrix I = CMatrix::Identity(n, n);
    const CMatrix Ai = inverse(CMatrix(I - W));
    const CMatrix Bi = inverse(CMatrix(I - W.conjugate()));
    const CMatrix Yf = Ai * (I - W * W.conjugate()) * Bi;
    const CRow etaf = z * Ai + z.conjugate() * Bi;
    const RMatrix Y = y.omega.Y();
    const RRow eta = y.zeta.imag();
    const double lhs = eta * Y.inverse() * eta.transpose();
    const double A = a_form(CMatrix(-W), z);
    const cplx t1 = (z * Ai * z.transpose())(0, 0);
    const cplx t2 = (z.conjugate() * Bi * z.conjugate().transpose())(0, 0);
    const cplx rhs = 2 * A + t1 + t2;
    const cplx rhs_naive = 2 * A - t1 - t2;
    const double sY = std::max(1.0, max_abs(Yf));
    IdentityResiduals r;
    r.y = max_abs(CMatrix(Y.cast<cplx>() - Yf)) / sY;
    r.eta = (eta.cast<cplx>() - etaf).cwiseAbs().maxCoeff() / std::max(1.0, etaf.cwiseAbs().maxCoeff());
    r.quad = rel(lhs, rhs);
    r.quad_naive = rel(lhs, rhs_naive);
    return r;
}

}  // namespace

VerifyReport verify_identities(const ReprParams& p, int count, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "identities-419-421";
    R.params = params_json(p);
    R.params["count"] = count;
    R.seed = seed;
    const int n = p.n;

    {
        const SJDiskPoint o = SJDiskPoint::origin(n);
        const auto r = identity_residuals(cayley_forward(o), o.w.full(), o.z);
        R.residual("base point: Y = I, η = 0, quadratic form = 0", std::max({r.y, r.eta, r.quad}), 1e-14);
    }
    if (n == 1) {
        const SJDiskPoint x = make_disk_point(CMatrix::Constant(1, 1, 0.5), CRow::Constant(1, 1.0));
        const double Y = cayley_forward(x).omega.Y()(0, 0);
        R.residual("n=1, W=1/2, z=1: Y = 3", std::abs(Y - 3.0), 1e-12);
    }

    Rng rng(seed);
    double my = 0, me = 0, mq = 0, ry = 0, re = 0, rq = 0, pq = 0;
    for (int i = 0; i < count; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(n, 0.8, 1.5, rng);
        const CMatrix W = x.w.full();
        const auto a = identity_residuals(cayley_forward(x), W, x.z);
        my = std::max(my, a.y);
        me = std::max(me, a.eta);
        mq = std::max(mq, a.quad);
        pq = std::max(pq, a.quad_naive);
        // reflected convention: (Ω, ζ) = φ((−W, z)) against the same right-hand sides
        const auto b = identity_residuals(cayley_forward(reflect(x)), W, x.z);
        ry = std::max(ry, b.y);
        re = std::max(re, b.eta);
        rq = std::max(rq, b.quad);
    }
    R.residual("Im Ω = (I−W)⁻¹(I−WW̄)(I−W̄)⁻¹", my, 1e-10);
    R.residual("Im ζ = z(I−W)⁻¹ + z̄(I−W̄)⁻¹", me, 1e-10);
    R.residual("ηY⁻¹ᵗη = 2A(−W,z) + z(I−W)⁻¹ᵗz + z̄(I−W̄)⁻¹ᵗz̄", mq, 1e-10);
    R.diag_residual("reflected chart φ((−W,z)): Im Ω identity", ry, 1e-10);
    R.diag_residual("reflected chart φ((−W,z)): Im ζ identity", re, 1e-10);
    R.diag_residual("reflected chart φ((−W,z)): quadratic identity", rq, 1e-10);
    R.diag_residual("quadratic identity with minus signs on the last two terms", pq, 1e-10,
                    "the minus-sign form does not hold");
    R.elapsed = seconds_since(t0);
    return R;
}

VerifyReport verify_jacobian_constant(const ReprParams& p, int count, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "jacobian-422";
    R.params = params_json(p);
    R.params["count"] = count;
    R.seed = seed;
    const int n = p.n;
    const double expected = std::pow(2.0, n * (n + 3));
    R.params["expected_constant"] = expected;

    auto product = [n](const SJDiskPoint& x, double jac) {
        const CMatrix W = x.w.full();
        const double gap = (CMatrix::Identity(n, n) - W * W.conjugate()).determinant().real();
        const double detY = cayley_forward(x).omega.Y().determinant();
        return jac * std::pow(detY, -n - 2.0) / std::pow(gap, -n - 2.0);
    };

    const SJDiskPoint o = SJDiskPoint::origin(n);
    R.residual("base point", std::abs(product(o, cayley_jacobian_fd(o)) / expected - 1), 1e-4);

    Rng rng(seed);
    double worst = 0, worst_analytic = 0, lo = 1e300, hi = 0;
    for (int i = 0; i < count; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(n, 0.8, 1.5, rng);
        const double v = product(x, cayley_jacobian_fd(x));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        worst = std::max(worst, std::abs(v / expected - 1));
        worst_analytic = std::max(worst_analytic, std::abs(cayley_jacobian(x) / cayley_jacobian_fd(x) - 1));
    }
    R.residual("|det Dφ|·density ratio = 2^{n(n+3)} (relative, finite differences)", worst, 1e-4);
    R.residual("closed-form Jacobian vs finite differences (relative)", worst_analytic, 1e-6);
    R.diag_value("smallest product", lo);
    R.diag_value("largest product", hi);

    // invariance of det(I−WW̄)^{−n−2}∏dRe dIm under the starred action
    double worst_inv = 0;
    for (int i = 0; i < count; ++i) {
        const JacobiStarElement g = random_jacobi_star(n, 0.5, rng);
        const SJDiskPoint x = sample_sj_disk_point(n, 0.6, 1.0, rng);
        auto f = [&](const Eigen::VectorXd& v) {
            return real_coordinates(act_sj_disk(g, disk_point_from_real(n, v)));
        };
        const double J = std::abs(finite_difference_jacobian(f, real_coordinates(x)).determinant());
        const SJDiskPoint gx = act_sj_disk(g, x);
        auto gap = [n](const SJDiskPoint& u) {
            const CMatrix W = u.w.full();
            return (CMatrix::Identity(n, n) - W * W.conjugate()).determinant().real();
        };
        const double lhs = std::pow(gap(gx), -n - 2.0) * J;
        worst_inv = std::max(worst_inv, std::abs(lhs / std::pow(gap(x), -n - 2.0) - 1));
    }
    R.residual("invariance of the disk measure under the starred action (relative)", worst_inv, 1e-5);
    R.elapsed = seconds_since(t0);
    return R;
}

GramResult gram_matrix(const ReprParams& p, int max_s, int max_a, const MCConfig& cfg) {
    p.validate();
    // For n ≥ 2 the basis is itself a Monte Carlo Gram–Schmidt. Build it from an independent sample of the same
    // size; its error then enters G − I with about the same variance as G's own, hence the √2 on σ.
    const QBasis Q = p.n == 1 ? q_basis(p.n, p.k, max_a) : q_basis(p.n, p.k, max_a, {cfg.samples, cfg.seed ^ 0x9e3779b97f4a7c15ULL});
    GramResult G;
    std::vector<PolyFunction> basis;
    for (const MultiIndex& s : enumerate_multiindices(p.n, max_s))
        for (const SymIndex& a : Q.index) {
            G.labels.emplace_back(s, a);
            basis.push_back(basis_F(s, a, p.m, Q, p.c_star));
        }
    G.gram = mc_dj_gram(basis, p.n, p.m, p.k, cfg, p.c_star);
    if (!Q.exact) G.gram.sigma *= std::sqrt(2.0);
    return G;
}

VerifyReport verify_gram(const ReprParams& p, int max_s, int max_a, const MCConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "gram-4-28";
    R.params = params_json(p);
    R.params["max_s"] = max_s;
    R.params["max_a"] = max_a;
    R.params["samples"] = cfg.samples;
    R.seed = cfg.seed;

    const GramResult G = gram_matrix(p, max_s, max_a, cfg);
    const auto N = static_cast<Eigen::Index>(G.labels.size());
    double worst_ratio = -1, max_sigma = 0, dev_inf = 0, parity = 0;
    Eigen::Index wi = 0, wj = 0;
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) {
            const cplx target = i == j ? 1.0 : 0.0;
            const double dev = std::abs(G.gram.mean(i, j) - target);
            const double s = G.gram.sigma(i, j);
            const double ratio = dev / (3 * s + 1e-12);
            dev_inf = std::max(dev_inf, dev);
            max_sigma = std::max(max_sigma, s);
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                wi = i;
                wj = j;
            }
            const int parity_sum = G.labels[static_cast<size_t>(i)].first.total() + G.labels[static_cast<size_t>(j)].first.total();
            if (parity_sum % 2) parity = std::max(parity, std::abs(G.gram.mean(i, j)));
        }
    const auto& li = G.labels[static_cast<size_t>(wi)];
    const auto& lj = G.labels[static_cast<size_t>(wj)];
    R.mc("‖G − I‖∞ within 3σ (worst entry " + fmt_index(li.first, li.second) + " × " + fmt_index(lj.first, lj.second) + ")",
         G.gram.mean(wi, wj), G.gram.sigma(wi, wj), wi == wj ? 1.0 : 0.0);
    if (p.n == 1) R.residual("largest entry σ", max_sigma, 3e-3);
    else R.diag_residual("largest entry σ (the 3e−3 target is set for n = 1)", max_sigma, 3e-3);
    R.residual("entries of opposite z-parity vanish", parity, 1e-12);
    R.diag_value("‖G − I‖∞", dev_inf);
    R.diag_value("basis size", static_cast<double>(N));
    R.diag_value("Monte Carlo time (s)", G.gram.elapsed);
    R.elapsed = seconds_since(t0);
    return R;
}

VerifyReport verify_isometry(const ReprParams& p, const MCConfig& cfg) {
    p.validate();
    if (p.n != 1) throw InvalidArgument("isometry suite runs at n = 1");
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "isometry";
    R.params = params_json(p);
    R.params["samples"] = cfg.samples;
    R.seed = cfg.seed;

    const int n = p.n;
    const QBasis Q = q_basis(n, p.k, 1);
    const DiskFunction F00 = disk_function(basis_F(unit_s(n, 0, 0), sym_zero(n), p.m, Q, p.c_star));
    const DiskFunction F10 = disk_function(basis_F(unit_s(n, 0, 1), sym_zero(n), p.m, Q, p.c_star));
    const DiskFunction F01 = disk_function(basis_F(unit_s(n, 0, 0), sym_diag(n, 1), p.m, Q, p.c_star));
    struct Case {
        std::string name;
        DiskFunction psi;
        double norm2;
    };
    const std::vector<Case> cases = {
        {"F_00", F00, 1.0},
        {"F_10", F10, 1.0},
        {"F_01", F01, 1.0},
        {"(F_00 + F_10)/√2", (1.0 / std::sqrt(2.0)) * (F00 + F10), 1.0},
        {"2·F_00", 2.0 * F00, 4.0},
    };
    std::uint64_t sub = 0;
    for (const Case& c : cases) {
        MCConfig cd = cfg, ch = cfg;
        cd.seed = cfg.seed + 2 * sub + 1;
        ch.seed = cfg.seed + 2 * sub + 2;
        ++sub;
        const MCEstimate d = mc_dj_inner_sampled(c.psi.f, c.psi.f, n, p.m, p.k, cd, p.c_star);
        const SpaceFunction phi = t_star(c.psi, p);
        const MCEstimate h = mc_hj_inner(phi.f, phi.f, n, p.m, p.k, ch, p.c_space());
        const double sc = std::hypot(d.sigma, h.sigma);
        R.mc("‖T★ψ‖² = ‖ψ‖², ψ = " + c.name, h.estimate, sc, d.estimate);
        R.mc("‖ψ‖² on the disk, ψ = " + c.name, d.estimate, d.sigma, c.norm2);
        R.diag_value("‖T★ψ‖ on ℌ, ψ = " + c.name, std::sqrt(std::max(0.0, h.estimate.real())));
        R.diag_value("‖ψ‖ on 𝔇, ψ = " + c.name, std::sqrt(std::max(0.0, d.estimate.real())));
    }
    R.elapsed = seconds_since(t0);
    return R;
}

VerifyReport reproducing_check(const ReprParams& p, const TruncationSpec& trunc, int points, const MCConfig& cfg) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "reproducing";
    R.params = params_json(p);
    R.params["max_degree"] = trunc.max_degree;
    R.params["max_a_degree"] = trunc.max_a_degree < 0 ? trunc.max_degree : trunc.max_a_degree;
    R.params["points"] = points;
    R.params["samples"] = cfg.samples;
    R.seed = cfg.seed;

    const int n = p.n;
    const int amax = trunc.max_a_degree < 0 ? trunc.max_degree : trunc.max_a_degree;
    const QBasis Q = q_basis(n, p.k, amax);
    const ExpansionParams ep{p.m, p.k, p.c_star, &Q};
    const double kconst = std::pow(8.0 * kPi * p.m, n) * berezin_constant(n, p.k) / p.c_star;

    {
        const SJDiskPoint o = SJDiskPoint::origin(n);
        const auto e = kernel_expansion_truncated(o, o, Expansion::Fock426, trunc, ep);
        if (Q.exact)
            R.residual("base point: truncated sum = closed form", std::abs(e.partial_sum - e.closed_form), 1e-12);
        else  // Σ_a |Q_a(0)|² of an empirically orthonormalized basis carries the Monte Carlo error of the Gram matrix
            R.residual("base point: truncated sum = closed form (relative, Monte Carlo Q-basis)",
                       rel(e.partial_sum, e.closed_form), 2e-2);
        R.diag_value("base-point kernel value (8πm)ⁿκ/C★", e.closed_form);
    }
    if (Q.exact) {
        Rng rng(cfg.seed);
        double worst = 0;
        for (int i = 0; i < points; ++i) {
            const SJDiskPoint xp = sample_sj_disk_point(n, 0.3, 0.5, rng);
            const SJDiskPoint x = sample_sj_disk_point(n, 0.3, 0.5, rng);
            const auto e = kernel_expansion_truncated(xp, x, Expansion::Fock426, trunc, ep);
            worst = std::max(worst, rel(e.partial_sum, e.closed_form));
        }
        R.residual("truncated Σ F_sa(x′)F̄_sa(x) vs closed form (relative)", worst, 1e-4);
    }

    // ⟨F_00, K_x⟩ = F_00(x)
    const PolyFunction f = basis_F(unit_s(n, 0, 0), sym_zero(n), p.m, Q, p.c_star);
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    for (int i = 0; i < points; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(n, 0.3, 0.5, rng);
        const DiskFn Kx = [x, p, kconst](const SJDiskPoint& y) { return kconst * kmk_star_kernel(y, x, p.m, p.k); };
        MCConfig c = cfg;
        c.seed = cfg.seed + 101 + static_cast<std::uint64_t>(i);
        const MCEstimate e = mc_dj_inner_sampled([&f](const SJDiskPoint& y) { return f(y); }, Kx, n, p.m, p.k, c, p.c_star);
        R.mc("⟨F_00, K_x⟩ = F_00(x), point " + std::to_string(i + 1), e.estimate, e.sigma, f(x));
    }
    R.elapsed = seconds_since(t0);
    return R;
}

VerifyReport verify_intertwining(const ReprParams& p, int count, std::uint64_t seed) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "intertwining";
    R.params = params_json(p);
    R.params["count"] = count;
    R.seed = seed;
    const int n = p.n;

    PolyFunction poly = PolyFunction::constant(n, 1.0);
    poly += PolyFunction::z_monomial(unit_s(n, 0), 0.7);
    poly += PolyFunction::w_monomial(sym_diag(n, 1), -0.4);
    poly += PolyFunction::z_monomial(unit_s(n, 0, 2), cplx(0, 0.25));
    if (n > 1) poly += PolyFunction::z_monomial(unit_s(n, n - 1), cplx(0.3, -0.2));
    const DiskFunction psi = disk_function(poly);
    const SpaceFunction tpsi = t_star(psi, p);

    // examples
    {
        const SpaceFunction one = t_star(disk_function(PolyFunction::constant(n, 1.0)), p);
        R.residual("T★1 at the base point = 1", std::abs(one(cayley_forward(SJDiskPoint::origin(n))) - 1.0), 1e-14);
        const SJDiskPoint h = make_disk_point(0.5 * CMatrix::Identity(n, n), CRow::Zero(n));
        R.residual("T★1 at φ(½I, 0) = 2^{−nk}", std::abs(one(cayley_forward(h)) - std::pow(2.0, -n * p.k)), 1e-12);
    }

    Rng rng(seed);
    double rt = 0, rt_unscaled_ratio = 0, inter = 0, comp_star = 0, comp = 0, ident = 0, central = 0;
    for (int i = 0; i < count; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(n, 0.6, 1.0, rng);
        rt = std::max(rt, rel(t_inv(tpsi, p)(x), psi(x)));
        rt_unscaled_ratio = std::abs(t_inv_unscaled(tpsi, p)(x) / psi(x));

        const JacobiStarElement g1 = random_jacobi_star(n, 0.5, rng);
        const JacobiStarElement g2 = random_jacobi_star(n, 0.5, rng);
        const SJSpacePoint y = cayley_forward(sample_sj_disk_point(n, 0.6, 1.0, rng));

        const cplx lhs = t_star(pi_star_apply(g1, psi, p), p)(y);
        const cplx rhs = pi_apply(theta_inv(g1), tpsi, p)(y);
        inter = std::max(inter, std::abs(lhs - rhs) / std::abs(rhs));

        const cplx c1 = pi_star_apply(g1, pi_star_apply(g2, psi, p), p)(x);
        const cplx c2 = pi_star_apply(jacobi_star_mul(g2, g1), psi, p)(x);
        comp_star = std::max(comp_star, std::abs(c1 - c2) / std::abs(c2));

        const JacobiElement h1 = theta_inv(g1), h2 = theta_inv(g2);
        const cplx d1 = pi_apply(h1, pi_apply(h2, tpsi, p), p)(y);
        const cplx d2 = pi_apply(jacobi_mul(h2, h1), tpsi, p)(y);
        comp = std::max(comp, std::abs(d1 - d2) / std::abs(d2));

        ident = std::max(ident, rel(pi_star_apply(JacobiStarElement::identity(n), psi, p)(x), psi(x)));
        std::uniform_real_distribution<double> u(-1, 1);
        const cplx vk(0, u(rng));
        const cplx expect = std::exp(-4.0 * kPi * p.m * vk) * psi(x);
        central = std::max(central, rel(pi_star_apply(JacobiStarElement::central(n, vk), psi, p)(x), expect));
    }
    R.residual("T★⁻¹∘T★ = id (relative)", rt, 1e-10);
    R.residual("T★∘π★(g★) = π(Θ⁻¹g★)∘T★ (relative)", inter, 1e-7);
    R.residual("π★(g₁)π★(g₂) = π★(g₂g₁) (relative)", comp_star, 1e-8);
    R.residual("π(g₁)π(g₂) = π(g₂g₁) (relative)", comp, 1e-8);
    R.residual("π★(identity) = id", ident, 1e-14);
    R.residual("centre (I, (0, ϰ)) acts by exp(−4πmϰ) = exp(2πimκ), κ = 2iϰ", central, 1e-12);
    R.diag_value("|unscaled inverse ∘ T★| / |ψ| (= 2^{nk} when det(I−iΩ)^k is used without the ½)", rt_unscaled_ratio);
    R.elapsed = seconds_since(t0);
    return R;
}

VerifyReport verify_kernel_invariance(const ReprParams& p, int count, std::uint64_t seed) {
    p.validate();
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport R;
    R.suite = "kernel-invariance";
    R.params = params_json(p);
    R.params["count"] = count;
    R.seed = seed;
    const int n = p.n;

    Rng rng(seed);
    double disk = 0, space = 0, herm = 0, disk_naive = 0, space_naive = 0;
    for (int i = 0; i < count; ++i) {
        const JacobiStarElement g = random_jacobi_star(n, 0.5, rng);
        const SJDiskPoint x = sample_sj_disk_point(n, 0.6, 1.0, rng);
        const double r = kmk_star_weight(act_kernel_chart(g, x), p.m, p.k) *
                         std::norm(jmk_star_kernel_chart(g, x, p.m, p.k)) / kmk_star_weight(x, p.m, p.k);
        disk = std::max(disk, std::abs(r - 1));
        const double rp = kmk_star_weight(act_kernel_chart(g, x), p.m, p.k) *
                          std::norm(jmk_star_naive(g, reflect(x), p.m, p.k)) / kmk_star_weight(x, p.m, p.k);
        disk_naive = std::max(disk_naive, std::abs(rp - 1));

        const JacobiElement h = theta_inv(g);
        const SJSpacePoint y = cayley_forward(x);
        const double s = kmk_weight(act_sj_space(h, y), p.m, p.k) * std::norm(jmk(h, y, p.m, p.k)) / kmk_weight(y, p.m, p.k);
        space = std::max(space, std::abs(s - 1));
        const double sp = kmk_weight_naive(act_sj_space(h, y), p.m, p.k) * std::norm(jmk(h, y, p.m, p.k)) /
                          kmk_weight_naive(y, p.m, p.k);
        space_naive = std::max(space_naive, std::abs(sp - 1));

        const SJDiskPoint x2 = sample_sj_disk_point(n, 0.6, 1.0, rng);
        const cplx k12 = kmk_star_kernel(x, x2, p.m, p.k), k21 = kmk_star_kernel(x2, x, p.m, p.k);
        herm = std::max(herm, std::abs(k12 - std::conj(k21)) / std::max(1.0, std::abs(k12)));
    }
    R.residual("K★(g★x)·|J★(g★,x)|² / K★(x) = 1", disk, 1e-7);
    R.residual("K(gy)·|𝒥(g,y)|² / K(y) = 1 on ℌₙᴶ", space, 1e-7);
    R.residual("K★(x, x′) = conj K★(x′, x) (relative)", herm, 1e-12);
    R.diag_residual("same ratio with exp(2πimθ★) taken literally", disk_naive, 1e-7);
    R.diag_residual("same ratio with (det Y)^{+k}", space_naive, 1e-7);
    R.elapsed = seconds_since(t0);
    return R;
}

}  // namespace sjd
