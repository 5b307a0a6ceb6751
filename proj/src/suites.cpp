#include "sjd/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "sjd/repr.hpp"

namespace sjd {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::ordered_json base_params(const SuiteConfig& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["m"] = c.m;
    j["k"] = c.k;
    return j;
}

VerifyReport start(const std::string& suite, const SuiteConfig& c) {
    VerifyReport R;
    R.suite = suite;
    R.params = base_params(c);
    R.seed = c.seed;
    return R;
}

ReprParams repr_params(const SuiteConfig& c) {
    ReprParams p{c.n, c.m, c.k, 1.0};
    p.validate();
    return p;
}

void require_weight(const SuiteConfig& c) {
    if (!(c.k > c.n + 0.5)) {
        std::ostringstream os;
        os << "weight must satisfy k > n + 1/2 (got k = " << c.k << ", n = " << c.n << ")";
        throw InvalidArgument(os.str());
    }
}

double rel_mat(const CMatrix& A, const CMatrix& B) { return max_abs(CMatrix(A - B)) / std::max(1.0, max_abs(B)); }

RRow random_real_row(int n, double scale, Rng& rng) {
    std::normal_distribution<double> nd(0.0, scale);
    RRow r(n);
    for (int i = 0; i < n; ++i) r(i) = nd(rng);
    return r;
}

HeisenbergElement random_heisenberg(int n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 0.5);
    return {random_real_row(n, 0.5, rng), random_real_row(n, 0.5, rng), nd(rng)};
}

SpStarElement random_sp_star(int n, Rng& rng) { return theta_iso(random_sp(n, 0.5, rng)); }

// ---- group axioms ------------------------------------------------------------

template <class T, class Mul, class Inv, class Gen>
double axiom_residual(int cases, const T& e, Mul mul, Inv inv, Gen gen) {
    double worst = 0;
    for (int i = 0; i < cases; ++i) {
        const T a = gen(), b = gen(), c = gen();
        worst = std::max(worst, distance(mul(a, e), a));
        worst = std::max(worst, distance(mul(e, a), a));
        worst = std::max(worst, distance(mul(mul(a, b), c), mul(a, mul(b, c))));
        worst = std::max(worst, distance(mul(a, inv(a)), e));
        worst = std::max(worst, distance(mul(inv(a), a), e));
    }
    return worst;
}

void group_axioms_at(VerifyReport& R, int n, int cases, Rng& rng, const std::string& tag) {
    R.residual("Sp(n,ℝ) axioms" + tag,
               axiom_residual(cases, SpElement::identity(n), sp_mul, sp_inverse, [&] { return random_sp(n, 0.5, rng); }),
               1e-9);
    R.residual("Sp(n,ℝ)★ axioms" + tag,
               axiom_residual(cases, SpStarElement::identity(n), sp_star_mul, sp_star_inverse,
                              [&] { return random_sp_star(n, rng); }),
               1e-9);
    R.residual("Heisenberg axioms" + tag,
               axiom_residual(cases, HeisenbergElement::identity(n), heisenberg_mul, heisenberg_inverse,
                              [&] { return random_heisenberg(n, rng); }),
               1e-9);
    R.residual("Jacobi group axioms" + tag,
               axiom_residual(cases, JacobiElement::identity(n), jacobi_mul, jacobi_inverse,
                              [&] { return random_jacobi(n, 0.5, rng); }),
               1e-9);
    R.residual("starred Jacobi group axioms" + tag,
               axiom_residual(cases, JacobiStarElement::identity(n), jacobi_star_mul, jacobi_star_inverse,
                              [&] { return random_jacobi_star(n, 0.5, rng); }),
               1e-9);
}

VerifyReport suite_group_axioms(const SuiteConfig& c) {
    VerifyReport R = start("group-axioms", c);
    Rng rng(c.seed);
    group_axioms_at(R, c.n, 100, rng, "");
    double sym = 0, star = 0;
    for (int i = 0; i < 100; ++i) {
        const SpElement s = sp_mul(random_sp(c.n, 0.5, rng), random_sp(c.n, 0.5, rng));
        sym = std::max(sym, s.symplectic_residual());
        const SpStarElement w = sp_star_mul(random_sp_star(c.n, rng), random_sp_star(c.n, rng));
        star = std::max(star, w.invariant_residual());
    }
    R.residual("products stay symplectic", sym, 1e-9);
    R.residual("products stay in Sp(n,ℝ)★", star, 1e-9);
    if (c.n != 3) group_axioms_at(R, 3, 10, rng, " (n=3 spot check)");
    return R;
}

VerifyReport suite_theta_iso(const SuiteConfig& c) {
    VerifyReport R = start("theta-iso", c);
    Rng rng(c.seed);
    const int n = c.n;
    double hs = 0, bs = 0, hj = 0, bj = 0, bj2 = 0;
    for (int i = 0; i < 100; ++i) {
        const SpElement a = random_sp(n, 0.5, rng), b = random_sp(n, 0.5, rng);
        hs = std::max(hs, distance(theta_iso(sp_mul(a, b)), sp_star_mul(theta_iso(a), theta_iso(b))));
        bs = std::max(bs, distance(theta_inv(theta_iso(a)), a));
        const JacobiElement g = random_jacobi(n, 0.5, rng), h = random_jacobi(n, 0.5, rng);
        hj = std::max(hj, distance(theta_iso(jacobi_mul(g, h)), jacobi_star_mul(theta_iso(g), theta_iso(h))));
        bj = std::max(bj, distance(theta_inv(theta_iso(g)), g));
        const JacobiStarElement gs = random_jacobi_star(n, 0.5, rng);
        bj2 = std::max(bj2, distance(theta_iso(theta_inv(gs)), gs));
    }
    R.residual("Θ(σσ′) = Θ(σ)Θ(σ′) on Sp(n,ℝ)", hs, 1e-10);
    R.residual("Θ⁻¹∘Θ = id on Sp(n,ℝ)", bs, 1e-10);
    R.residual("Θ(gg′) = Θ(g)Θ(g′) on the Jacobi group", hj, 1e-10);
    R.residual("Θ⁻¹∘Θ = id on the Jacobi group", bj, 1e-10);
    R.residual("Θ∘Θ⁻¹ = id on the starred Jacobi group", bj2, 1e-10);
    const JacobiStarElement e = theta_iso(JacobiElement::identity(n));
    R.residual("Θ(identity) = identity", distance(e, JacobiStarElement::identity(n)), 1e-15);
    return R;
}

VerifyReport suite_actions(const SuiteConfig& c) {
    VerifyReport R = start("actions", c);
    Rng rng(c.seed);
    const int n = c.n;
    double uh = 0, dk = 0, sp = 0, sd = 0, id = 0;
    int lost = 0;
    for (int i = 0; i < 100; ++i) {
        try {
            const SpElement a = random_sp(n, 0.5, rng), b = random_sp(n, 0.5, rng);
            const UpperHalfPoint O = sample_upper_half_point(n, rng);
            uh = std::max(uh, rel_mat(act_upper_half(sp_mul(a, b), O).full(),
                                      act_upper_half(a, act_upper_half(b, O)).full()));
            id = std::max(id, rel_mat(act_upper_half(SpElement::identity(n), O).full(), O.full()));

            const SpStarElement u = random_sp_star(n, rng), v = random_sp_star(n, rng);
            const DiskPoint W = sample_disk_point(n, 0.8, rng);
            dk = std::max(dk, rel_mat(act_disk(sp_star_mul(u, v), W).full(), act_disk(u, act_disk(v, W)).full()));

            const JacobiElement g = random_jacobi(n, 0.5, rng), h = random_jacobi(n, 0.5, rng);
            const SJSpacePoint y = sample_sj_space_point(n, 1.0, rng);
            const SJSpacePoint y1 = act_sj_space(jacobi_mul(g, h), y), y2 = act_sj_space(g, act_sj_space(h, y));
            sp = std::max(sp, distance(y1, y2) / std::max(1.0, max_abs(y2.omega.full())));
            if (!UpperHalfPoint::contains(y1.omega.full())) ++lost;

            const JacobiStarElement gs = random_jacobi_star(n, 0.5, rng), hs = random_jacobi_star(n, 0.5, rng);
            const SJDiskPoint x = sample_sj_disk_point(n, 0.8, 1.5, rng);
            const SJDiskPoint x1 = act_sj_disk(jacobi_star_mul(gs, hs), x), x2 = act_sj_disk(gs, act_sj_disk(hs, x));
            sd = std::max(sd, distance(x1, x2) / std::max(1.0, x2.z.cwiseAbs().maxCoeff()));
            if (!DiskPoint::contains(x1.w.full())) ++lost;
            id = std::max(id, distance(act_sj_disk(JacobiStarElement::identity(n), x), x));
        } catch (const DomainError&) {
            ++lost;
        }
    }
    R.residual("Sp(n,ℝ) on ℌₙ: (σσ′)Ω = σ(σ′Ω)", uh, 1e-9);
    R.residual("Sp(n,ℝ)★ on 𝔇ₙ: (ωω′)W = ω(ω′W)", dk, 1e-9);
    R.residual("Jacobi group on ℌₙᴶ: composition", sp, 1e-9);
    R.residual("starred Jacobi group on 𝔇ₙᴶ: composition", sd, 1e-9);
    R.residual("identity acts trivially", id, 1e-12);
    R.flag("actions preserve domain membership", lost == 0, std::to_string(lost) + " images left the domain");
    return R;
}

VerifyReport suite_cayley(const SuiteConfig& c) {
    VerifyReport R = start("cayley", c);
    Rng rng(c.seed);
    const int n = c.n;

    const SJSpacePoint b = cayley_forward(SJDiskPoint::origin(n));
    R.residual("φ(0, 0) = (iI, 0)",
               std::max(max_abs(CMatrix(b.omega.full() - cplx(0, 1) * CMatrix::Identity(n, n))), b.zeta.cwiseAbs().maxCoeff()),
               1e-15);

    double rt = 0, rt2 = 0, smax = 0;
    int outside = 0;
    for (int i = 0; i < 1000; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(n, 0.8, 2.0, rng);
        const SJSpacePoint y = cayley_forward(x);
        if (!posdef_certificate(y.omega.Y()).positive) ++outside;
        rt = std::max(rt, distance(cayley_inverse(y), x));

        const UpperHalfPoint O = sample_upper_half_point(n, rng);
        const DiskPoint W = cayley_inverse(O);
        smax = std::max(smax, largest_singular_value(W.full()));
        rt2 = std::max(rt2, rel_mat(cayley_forward(W).full(), O.full()));
    }
    R.residual("φ⁻¹∘φ = id on 1000 points (ρ = 0.8, |z| ≤ 2)", rt, 1e-12);
    R.flag("φ maps into ℌₙᴶ (Im Ω ≻ 0)", outside == 0);
    R.flag("φ⁻¹ maps ℌₙ into 𝔇ₙ (σ_max < 1)", smax < 1.0, "largest σ_max " + std::to_string(smax));
    R.residual("φ∘φ⁻¹ = id on ℌₙ (relative)", rt2, 1e-10);

    // I − WW̄ ≻ 0 ⟺ σ_max(W) < 1, on a grid of symmetric 2×2 matrices
    const std::vector<double> g = {-0.95, -0.6, -0.25, 0.0, 0.25, 0.6, 0.95};
    int mismatch = 0, tested = 0;
    for (double a : g)
        for (double bb : g)
            for (double cc : g)
                for (double ph : {0.0, 0.7}) {
                    CMatrix W(2, 2);
                    W << std::polar(std::abs(a), ph) * (a < 0 ? -1.0 : 1.0), cplx(bb, 0.5 * bb),
                        cplx(bb, 0.5 * bb), cplx(cc, -ph * cc);
                    const double s = largest_singular_value(W);
                    if (std::abs(s - 1) < 1e-9) continue;
                    ++tested;
                    if (DiskPoint::contains(W) != (s < 1)) ++mismatch;
                }
    R.flag("I − WW̄ ≻ 0 ⟺ σ_max(W) < 1 on a 2×2 grid", mismatch == 0,
           std::to_string(mismatch) + " mismatches out of " + std::to_string(tested));

    double eq = 0;
    for (int i = 0; i < 100; ++i) {
        const JacobiElement gj = random_jacobi(n, 0.5, rng);
        const SJDiskPoint x = sample_sj_disk_point(n, 0.7, 1.0, rng);
        const SJSpacePoint l = cayley_forward(act_sj_disk(theta_iso(gj), x));
        const SJSpacePoint r = act_sj_space(gj, cayley_forward(x));
        eq = std::max(eq, distance(l, r) / std::max(1.0, max_abs(r.omega.full())));
    }
    R.residual("φ(Θ(g)x) = gφ(x) (relative)", eq, 1e-9);
    return R;
}

VerifyReport suite_cocycle(const SuiteConfig& c) {
    VerifyReport R = start("cocycle", c);
    Rng rng(c.seed);
    const int n = c.n;
    double r1 = 0, r1s = 0, rj = 0, rjs = 0, rjc = 0, rjp = 0;
    for (int i = 0; i < 100; ++i) {
        const SpElement a = random_sp(n, 0.5, rng), b = random_sp(n, 0.5, rng);
        const UpperHalfPoint O = sample_upper_half_point(n, rng);
        r1 = std::max(r1, rel_mat(j1(sp_mul(a, b), O), j1(a, act_upper_half(b, O)) * j1(b, O)));

        const SpStarElement u = random_sp_star(n, rng), v = random_sp_star(n, rng);
        const DiskPoint W = sample_disk_point(n, 0.8, rng);
        r1s = std::max(r1s, rel_mat(j1_star(sp_star_mul(u, v), W), j1_star(u, act_disk(v, W)) * j1_star(v, W)));

        const JacobiElement g = random_jacobi(n, 0.5, rng), h = random_jacobi(n, 0.5, rng);
        const SJSpacePoint y = sample_sj_space_point(n, 1.0, rng);
        const cplx l = jmk(jacobi_mul(g, h), y, c.m, c.k);
        const cplx r = jmk(g, act_sj_space(h, y), c.m, c.k) * jmk(h, y, c.m, c.k);
        rj = std::max(rj, std::abs(l - r) / std::abs(r));

        const JacobiStarElement gs = random_jacobi_star(n, 0.5, rng), hs = random_jacobi_star(n, 0.5, rng);
        const SJDiskPoint x = sample_sj_disk_point(n, 0.7, 1.0, rng);
        const JacobiStarElement prod = jacobi_star_mul(gs, hs);
        auto cocycle = [&](auto factor, auto act) {
            const cplx L = factor(prod, x);
            const cplx Rr = factor(gs, act(hs, x)) * factor(hs, x);
            return std::abs(L - Rr) / std::abs(Rr);
        };
        rjs = std::max(rjs, cocycle([&](const auto& g_, const auto& x_) { return jmk_star(g_, x_, c.m, c.k); },
                                    [](const auto& g_, const auto& x_) { return act_sj_disk(g_, x_); }));
        rjc = std::max(rjc, cocycle([&](const auto& g_, const auto& x_) { return jmk_star_kernel_chart(g_, x_, c.m, c.k); },
                                    [](const auto& g_, const auto& x_) { return act_kernel_chart(g_, x_); }));
        rjp = std::max(rjp, cocycle([&](const auto& g_, const auto& x_) { return jmk_star_naive(g_, x_, c.m, c.k); },
                                    [](const auto& g_, const auto& x_) { return act_sj_disk(g_, x_); }));
    }
    R.residual("J₁(σσ′, Ω) = J₁(σ, σ′Ω)J₁(σ′, Ω)", r1, 1e-8);
    R.residual("J₁★(ωω′, W) = J₁★(ω, ω′W)J₁★(ω′, W)", r1s, 1e-8);
    R.residual("𝒥(gg′, y) = 𝒥(g, g′y)𝒥(g′, y) (relative)", rj, 1e-8);
    R.residual("J★(g★g★′, x) = J★(g★, g★′x)J★(g★′, x) (relative)", rjs, 1e-8);
    R.residual("same law in the chart of the invariant weight", rjc, 1e-8);
    R.diag_residual("cocycle law of the literal exp(2πimθ★) factor", rjp, 1e-8);
    return R;
}

// ---- polynomials -------------------------------------------------------------

VerifyReport suite_genfun(const SuiteConfig& c) {
    VerifyReport R = start("genfun", c);
    const std::vector<std::pair<int, int>> ranges = {{1, 8}, {2, 4}, {3, 3}};
    for (const auto& [n, deg] : ranges) {
        double dist = 0;
        int inhomogeneous = 0, count = 0;
        for (const MultiIndex& s : enumerate_multiindices(n, deg)) {
            const PolyFunction P = p_s(s);
            dist = std::max(dist, coefficient_distance(P, p_s_from_generating(s)));
            for (const auto& [key, v] : P.terms())
                if (key.s.total() + 2 * key.a.degree() != s.total()) ++inhomogeneous;
            ++count;
        }
        const std::string tag = " (n=" + std::to_string(n) + ", |s| ≤ " + std::to_string(deg) + ")";
        R.residual("closed form = Taylor coefficients of exp(UᵗZ + ½UWᵗU)" + tag, dist, 0.0,
                   std::to_string(count) + " multi-indices, exact rational expansion");
        R.flag("weighted homogeneity, Z weight 1, W weight 2" + tag, inhomogeneous == 0);
    }
    // worked examples
    PolyFunction P2(1), P3(1), P11(2);
    P2.add_term(MultiIndex({2}), SymIndex(1), 1.0);
    P2.add_term(MultiIndex({0}), SymIndex(1, {1}), 1.0);
    P3.add_term(MultiIndex({3}), SymIndex(1), 1.0);
    P3.add_term(MultiIndex({1}), SymIndex(1, {1}), 3.0);
    P11.add_term(MultiIndex({1, 1}), SymIndex(2), 1.0);
    P11.add_term(MultiIndex({0, 0}), SymIndex(2, {0, 1, 0}), 1.0);
    R.residual("P_2 = Z² + W", coefficient_distance(p_s(MultiIndex({2})), P2), 0.0);
    R.residual("P_3 = Z³ + 3ZW", coefficient_distance(p_s(MultiIndex({3})), P3), 0.0);
    R.residual("P_(1,1) = Z₁Z₂ + W₁₂", coefficient_distance(p_s(MultiIndex({1, 1})), P11), 0.0);
    return R;
}

VerifyReport suite_pde(const SuiteConfig& c) {
    VerifyReport R = start("pde", c);
    Rng rng(c.seed);
    const int n = c.n;
    const int deg = n == 1 ? 8 : (n == 2 ? 6 : 4);
    const double c8 = 8.0 * kPi * c.m;
    double exact = 0, scaled = 0;
    int lead_bad = 0;
    for (const MultiIndex& s : enumerate_multiindices(n, deg)) {
        exact = std::max(exact, pde_residual(p_s(s), 1.0));
        const PolyFunction f = basis_f(s, c.m);
        scaled = std::max(scaled, pde_check(f, c.m) / std::max(1.0, c8 * f.max_abs_coefficient()));
        // P_s − Z^s has z-degree ≤ |s| − 2 (so f_s is (√(8πm)z)^s/√s! plus lower order)
        const PolyFunction rest = p_s(s) - PolyFunction::z_monomial(s);
        if (!rest.is_zero() && rest.max_z_degree() > s.total() - 2) ++lead_bad;
    }
    const std::string tag = " (|s| ≤ " + std::to_string(deg) + ")";
    R.residual("∂²P/∂Z_j∂Z_k = (1+δ_jk)∂P/∂W_jk on every P_s" + tag, exact, 0.0, "integer coefficients, exact");
    R.residual("∂²f/∂z_j∂z_k = 8πm(1+δ_jk)∂f/∂W_jk on every f_s (relative)" + tag, scaled, 1e-12);
    R.flag("P_s − Z^s has z-degree ≤ |s| − 2" + tag, lead_bad == 0);

    // random combinations with constant coefficients stay in the kernel
    const auto idx = enumerate_multiindices(n, std::min(deg, 6));
    std::normal_distribution<double> nd;
    double comb = 0;
    for (int t = 0; t < 20; ++t) {
        PolyFunction f(n);
        for (const MultiIndex& s : idx) f += basis_f(s, c.m) * cplx(nd(rng), nd(rng));
        comb = std::max(comb, pde_check(f, c.m) / std::max(1.0, c8 * f.max_abs_coefficient()));
    }
    R.residual("random combinations Σ c_s f_s (relative)", comb, 1e-12);

    // monomials z^s W^a with a ≠ 0 are not solutions
    int zero_hits = 0;
    for (const MultiIndex& s : enumerate_multiindices(n, 3))
        for (const SymIndex& a : enumerate_symindices_by_degree(n, 2)) {
            if (a.is_zero()) continue;
            if (pde_check(PolyFunction::monomial(s, a), c.m) == 0.0) ++zero_hits;
        }
    R.flag("z^s W^a with a ≠ 0 alone has nonzero residual", zero_hits == 0);
    R.diag_value("z₁²W₁₁ residual", pde_check(PolyFunction::monomial(MultiIndex({2}), SymIndex(1, {1})), c.m));

    // every z^s W^a is a finite combination Σ c_s(W) f_s
    if (n == 1) {
        double worst = 0;
        for (const MultiIndex& s : enumerate_multiindices(1, 4))
            for (const SymIndex& a : enumerate_symindices(1, 4)) {
                const PolyFunction mono = PolyFunction::monomial(s, a);
                PolyFunction back(1);
                for (const auto& [t, ct] : expand_in_f_basis(mono, c.m)) back += ct * basis_f(t, c.m);
                worst = std::max(worst, coefficient_distance(back, mono));
            }
        R.residual("z^s W^a = Σ c_s(W) f_s by back-substitution (|s| ≤ 4, w(a) ≤ 4)", worst, 1e-10);
    }
    return R;
}

VerifyReport suite_expansions(const SuiteConfig& c) {
    require_weight(c);
    VerifyReport R = start("expansions", c);
    Rng rng(c.seed);
    const int n = c.n;
    const QBasis Q = q_basis(n, c.k, n == 1 ? 14 : 2);
    const ExpansionParams ep{c.m, c.k, 1.0, &Q};

    {
        const SJDiskPoint x = make_disk_point(CMatrix::Constant(1, 1, 0.3), CRow::Zero(1));
        TruncationSpec t;
        t.max_degree = 20;
        const auto e = kernel_expansion_truncated(x, x, Expansion::H11, t, ep);
        const double ref = 1.0 / std::sqrt(0.91);
        R.residual("Σ P_s P̄_s/s! at W′ = W = 0.3, z = 0, |s| ≤ 20 vs (0.91)^{−1/2}", std::abs(e.partial_sum - ref), 1e-8);
        R.residual("closed form at W′ = W = 0.3 ≈ 1.048285", std::abs(e.closed_form - 1.048285), 1e-6);
        bool mono = true;
        for (size_t d = 1; d < e.partial_by_degree.size(); ++d)
            mono = mono && e.partial_by_degree[d].real() >= e.partial_by_degree[d - 1].real();
        R.flag("partial sums increase monotonically", mono);
    }

    const std::vector<Expansion> all = {Expansion::H11, Expansion::H27, Expansion::H35, Expansion::Fock426};
    TruncationSpec t14;
    t14.max_degree = 14;
    for (Expansion w : all) {
        if (w == Expansion::Fock426 && !Q.exact) {
            R.diag_value("fock4.26 skipped: the Q-basis is Monte Carlo at n ≥ 2", 0.0);
            continue;
        }
        const SJDiskPoint o = SJDiskPoint::origin(n);
        const auto b = kernel_expansion_truncated(o, o, w, t14, ep);
        const cplx base_target = w == Expansion::Fock426 ? b.closed_form : cplx(1.0);
        R.residual(to_string(w) + ": base point", std::max(std::abs(b.partial_sum - base_target), std::abs(b.closed_form - base_target)), 1e-12);

        double worst = 0;
        int nonmono = 0;
        Rng r2(c.seed + 17);
        for (int i = 0; i < 20; ++i) {
            const SJDiskPoint xp = sample_sj_disk_point(n, 0.3, 0.3, r2);
            const SJDiskPoint x = sample_sj_disk_point(n, 0.3, 0.3, r2);
            const auto e = kernel_expansion_truncated(xp, x, w, t14, ep);
            worst = std::max(worst, std::abs(e.partial_sum - e.closed_form));
            const double e7 = std::abs(e.partial_by_degree[7] - e.closed_form);
            if (std::abs(e.partial_sum - e.closed_form) > e7 + 1e-15) ++nonmono;
        }
        R.residual(to_string(w) + ": 20 random pairs, degree 14", worst, 1e-6);
        R.flag(to_string(w) + ": error at degree 14 ≤ error at degree 7", nonmono == 0);
    }

    // unscaled exponent for the Φ/f kernels: exp(2πm A) instead of exp(8πm A)
    {
        const SJDiskPoint xp = sample_sj_disk_point(n, 0.3, 0.5, rng), x = sample_sj_disk_point(n, 0.3, 0.5, rng);
        const auto e = kernel_expansion_truncated(xp, x, Expansion::H35, t14, ep);
        const CMatrix I = CMatrix::Identity(n, n);
        const cplx unscaled = det_power(CMatrix(I - xp.w.full() * x.w.full().conjugate()), -0.5) *
                             std::exp(2.0 * kPi * c.m * a_polar(xp, x));
        R.diag_residual("Σ f_s f̄_s against det^{−1/2}exp(2πmA) (unscaled exponent)", std::abs(e.partial_sum - unscaled), 1e-6,
                        "the 8πm scale is forced by Z = √(8πm)z");
    }
    return R;
}

// ---- integrals ----------------------------------------------------------------

ZZbarPoly random_zzbar(int n, int max_deg, int terms, Rng& rng) {
    std::uniform_int_distribution<int> e(0, max_deg);
    std::normal_distribution<double> nd;
    ZZbarPoly p;
    p.n = n;
    while (static_cast<int>(p.terms.size()) < terms) {
        std::vector<int> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        int tot = 0;
        for (int i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)] = e(rng) / (2 * n);
            b[static_cast<size_t>(i)] = e(rng) / (2 * n);
            tot += a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)];
        }
        if (tot <= max_deg) p.add(a, b, cplx(nd(rng), nd(rng)));
    }
    return p;
}

VerifyReport suite_gaussian_integrals(const SuiteConfig& c) {
    require_weight(c);
    VerifyReport R = start("gaussian-integrals", c);
    Rng rng(c.seed);

    // exact moments vs tensor Gauss–Hermite (order 40)
    for (int n : {1, 2}) {
        double worst = 0;
        const int polys = n == 1 ? 8 : 2;
        for (int t = 0; t < polys; ++t) {
            const ZZbarPoly p = random_zzbar(n, 10, n == 1 ? 8 : 5, rng);
            const GaussianForm g = t % 2 ? GaussianForm::standard(n)
                                         : GaussianForm::from_a_form(sample_disk_point(n, 0.7, rng), 8.0 * kPi * c.m);
            const cplx a = gaussian_moment(p, g), b = gauss_hermite_moment(p, g, 40);
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        R.residual("Isserlis moments = Gauss–Hermite order 40, degree ≤ 10 (n=" + std::to_string(n) + ")", worst, 1e-10);
    }
    {
        ZZbarPoly p;
        p.n = 1;
        p.add({2}, {2}, 1.0);
        R.residual("∫|z|⁴e^{−|z|²}dν = 2", std::abs(gaussian_moment(p, GaussianForm::standard(1)) / kPi - 2.0), 1e-13);
        R.residual("∫e^{−|z|²}d²z = π", std::abs(GaussianForm::standard(1).normalization() - kPi), 1e-14);
    }

    // Bargmann moments δ_sr·s!
    for (int n : {1, 2}) {
        double worst = 0;
        const auto all = enumerate_multiindices(n, 6 * n);
        std::vector<MultiIndex> box;
        for (const auto& s : all)
            if (*std::max_element(s.s.begin(), s.s.end()) <= 6) box.push_back(s);
        for (const auto& s : box)
            for (const auto& r : box) {
                const cplx v = bargmann_moment(s, r);
                const double want = s == r ? s.factorial() : 0.0;
                worst = std::max(worst, std::abs(v - want) / std::max(1.0, want));
            }
        R.residual("∫U^sŪ^r e^{−|U|²}dν = δ_sr s!, s_i, r_i ≤ 6 (n=" + std::to_string(n) + ", relative)", worst, 1e-12);
    }

    // Gaussian matrix integral on a grid of W (n=1), with a box-quadrature oracle where it converges
    double mg = 0, box = 0;
    for (double r : {0.0, 0.3, 0.5, 0.6, 0.9, 0.99})
        for (double th : {0.0, 1.1, 2.5, 4.0}) {
            const DiskPoint W(CMatrix::Constant(1, 1, std::polar(r, th)));
            const cplx cf = matrix_gaussian_closed_form(W);
            mg = std::max(mg, std::abs(matrix_gaussian_integral(W) - cf) / std::abs(cf));
            if (r <= 0.6) box = std::max(box, std::abs(matrix_gaussian_box_quadrature(W) - cf) / std::abs(cf));
        }
    R.residual("∫exp(−|Z|² − Re(ZW̄ᵗZ))d²Z = π(1−|w|²)^{−1/2} on a W grid (relative)", mg, 1e-10);
    R.residual("same, tensor Gauss–Legendre on [−9, 9]², |w| ≤ 0.6 (relative)", box, 1e-10);
    {
        const DiskPoint W(CMatrix::Constant(1, 1, 0.5));
        R.residual("W = 0.5: π(1 − 0.25)^{−1/2}", std::abs(matrix_gaussian_integral(W) - kPi / std::sqrt(0.75)), 1e-12);
    }

    // ∫G·Ḡ dν
    {
        const SJDiskPoint x = make_disk_point(CMatrix::Constant(1, 1, 0.3), CRow::Zero(1));
        R.residual("generating-function integral, W′ = W = 0.3, z = 0", verify_h9(x, x, 14), 1e-6);
        double worst = 0;
        for (int i = 0; i < 10; ++i)
            worst = std::max(worst, verify_h9(sample_sj_disk_point(1, 0.3, 0.5, rng), sample_sj_disk_point(1, 0.3, 0.5, rng), 14));
        R.residual("generating-function integral, 10 random pairs, truncation 14", worst, 1e-6);
        if (c.n >= 2) {
            const int n = c.n;
            double w2 = 0;
            for (int i = 0; i < 3; ++i)
                w2 = std::max(w2, verify_h9(sample_sj_disk_point(n, 0.3, 0.5, rng), sample_sj_disk_point(n, 0.3, 0.5, rng), 10));
            R.residual("generating-function integral, n=" + std::to_string(n) + ", truncation 10", w2, 1e-6);
        }
    }

    // Monte Carlo on the disk: Beta oracles, determinism, σ ∝ N^{−1/2}
    {
        const std::size_t N = c.samples.value_or(100000);
        const MCConfig cfg{N, c.seed, 1 << 14};
        const PolyFunction one = PolyFunction::constant(1, 1.0);
        const PolyFunction w = PolyFunction::w_monomial(SymIndex(1, {1}));
        const double k = 3.0;
        const MCEstimate e11 = mc_disk_inner(one, one, 1, k, cfg);
        const MCEstimate ew1 = mc_disk_inner(w, one, 1, k, cfg);
        const MCEstimate eww = mc_disk_inner(w, w, 1, k, cfg);
        R.mc("∫(1−|w|²)^{1/2}dA = 2π/3 (k = 3)", e11.estimate, e11.sigma, 2 * kPi / 3);
        R.mc("∫w(1−|w|²)^{1/2}dA = 0", ew1.estimate, ew1.sigma, 0.0);
        R.mc("∫|w|²(1−|w|²)^{1/2}dA = πB(2, 3/2)", eww.estimate, eww.sigma, kPi * 4.0 / 15.0);
        const MCEstimate again = mc_disk_inner(one, one, 1, k, cfg);
        R.flag("seeded determinism", again.estimate == e11.estimate && again.sigma == e11.sigma);
        // the constant integrand is sampled exactly by the disk proposal at n = 1, so use |w|²
        const MCEstimate half = mc_disk_inner(w, w, 1, k, {N / 2, c.seed + 1, 1 << 14});
        const double ratio = half.sigma / eww.sigma;
        R.residual("σ(N/2)/σ(N) = √2 (relative)", std::abs(ratio / std::sqrt(2.0) - 1), 0.1);
    }

    // calibration
    for (int n : {1, 2}) {
        const Calibration cal = calibrate_norms(n, c.m);
        const double want = std::pow(8.0 * kPi * c.m, n);
        R.residual("calibrated constant = (8πm)^" + std::to_string(n), std::abs(cal.calibrated / want - 1), 1e-12);
        R.diag_value("ratio calibrated/(2πm)^n, n=" + std::to_string(n), cal.ratio);
    }
    return R;
}

VerifyReport suite_orthonormality_fock(const SuiteConfig& c) {
    VerifyReport R = start("orthonormality-fock", c);
    Rng rng(c.seed);
    const int n = c.n;
    const auto idx = enumerate_multiindices(n, 4);
    std::vector<DiskPoint> Ws = {DiskPoint::origin(n)};
    if (n == 1) {
        Ws.emplace_back(CMatrix::Constant(1, 1, 0.3));
        Ws.emplace_back(CMatrix::Constant(1, 1, std::polar(0.6, 2.0)));
    } else {
        Ws.push_back(sample_disk_point(n, 0.4, rng));
        Ws.push_back(sample_disk_point(n, 0.7, rng));
    }
    double worst = 0, nominal_off = 0;
    for (const DiskPoint& W : Ws) {
        std::vector<PolyFunction> phi;
        for (const auto& s : idx) phi.push_back(basis_phi(W, s, c.m));
        for (size_t i = 0; i < phi.size(); ++i)
            for (size_t j = 0; j < phi.size(); ++j) {
                const cplx g = fock_inner(phi[i], phi[j], W, c.m, FockNormalization::Calibrated);
                worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
                if (i == j) {
                    const cplx gp = fock_inner(phi[i], phi[j], W, c.m, FockNormalization::Nominal);
                    nominal_off = std::max(nominal_off, std::abs(gp));
                }
            }
    }
    R.residual("calibrated Gram of {Φ_Ws : |s| ≤ 4} = I at three W", worst, 1e-6);
    const PolyFunction one = PolyFunction::constant(n, 1.0);
    R.residual("⟨1, 1⟩ at W = 0, calibrated", std::abs(fock_inner(one, one, DiskPoint::origin(n), c.m, FockNormalization::Calibrated) - 1.0), 1e-13);
    const Calibration cal = calibrate_norms(n, c.m);
    R.diag_value("calibrated constant cₙ(m)", cal.calibrated);
    R.diag_value("(2πm)ⁿ prefactor", cal.nominal);
    R.diag_value("ratio calibrated / (2πm)ⁿ", cal.ratio);
    R.diag_value("diagonal under the (2πm)ⁿ prefactor", nominal_off);
    return R;
}

VerifyReport suite_q_basis(const SuiteConfig& c) {
    require_weight(c);
    VerifyReport R = start("q-basis", c);
    const int n = c.n;
    if (n == 1) {
        const QBasis Q = q_basis(1, c.k, 4);
        const double q0 = std::sqrt((c.k - 1.5) / kPi);
        R.residual("Q_0 = √((k − 3/2)/π)", std::abs(Q.q[0](SJDiskPoint::origin(1)) - q0), 1e-14);
        // Gram under ∫ · (1−|w|²)^{k−5/2} dA: u = √(1−r²) with Gauss–Legendre, trapezoid in the angle
        std::vector<double> x, wt;
        gauss_legendre_rule(80, x, wt);
        const int M = 64;
        const size_t N = Q.q.size();
        CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
        std::vector<cplx> v(N);
        for (size_t a = 0; a < x.size(); ++a) {
            const double u = 0.5 * (x[a] + 1), du = 0.5 * wt[a];
            const double r = std::sqrt(1 - u * u);
            const double radial = std::pow(u, 2 * c.k - 4) * du;
            for (int t = 0; t < M; ++t) {
                const double th = 2 * kPi * t / M;
                const SJDiskPoint pt{DiskPoint(CMatrix::Constant(1, 1, std::polar(r, th))), CRow::Zero(1)};
                for (size_t i = 0; i < N; ++i) v[i] = Q.q[i](pt);
                for (size_t i = 0; i < N; ++i)
                    for (size_t j = 0; j < N; ++j)
                        G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += radial * (2 * kPi / M) * v[i] * std::conj(v[j]);
            }
        }
        R.residual("Gram of {Q_0..Q_4} by polar quadrature = I", max_abs(CMatrix(G - CMatrix::Identity(G.rows(), G.cols()))), 1e-6);
        R.residual("Σ|Q_a(0)|² = Berezin constant", std::abs(q0 * q0 - berezin_constant(1, c.k)), 1e-14);
    } else {
        const std::size_t N = c.samples.value_or(200000);
        const QBasis Q = q_basis(n, c.k, 2, {N, c.seed});
        const GramEstimate G = mc_disk_gram(Q.q, n, c.k, {N, c.seed + 7919, 1 << 14});
        // The basis and the check sample are independent and equally large, so σ of G − I is √2·σ(G). The gate is
        // on the worst of M = N(N+1)/2 entries: z is chosen so the family-wise false-alarm rate matches a single 3σ test.
        const RMatrix sig = std::sqrt(2.0) * G.sigma;
        const double M = 0.5 * static_cast<double>(G.mean.rows() * (G.mean.rows() + 1));
        const double z = boost::math::quantile(boost::math::complement(boost::math::normal(), 0.00135 / M));
        double worst = -1;
        Eigen::Index wi = 0, wj = 0;
        for (Eigen::Index i = 0; i < G.mean.rows(); ++i)
            for (Eigen::Index j = 0; j < G.mean.cols(); ++j) {
                const double r = std::abs(G.mean(i, j) - (i == j ? 1.0 : 0.0)) / (sig(i, j) + 1e-12);
                if (r > worst) {
                    worst = r;
                    wi = i;
                    wj = j;
                }
            }
        R.mc("Gram–Schmidt output orthonormal under an independent sample (worst entry)", G.mean(wi, wj), sig(wi, wj),
             wi == wj ? 1.0 : 0.0, z);
        const MCEstimate vol = mc_disk_inner(PolyFunction::constant(n, 1.0), PolyFunction::constant(n, 1.0), n, c.k,
                                             {N, c.seed + 104729, 1 << 14});
        const double kappa = berezin_constant(n, c.k);
        R.mc("1/Berezin constant = ∫det(I−WW̄)^{k−n−3/2}", vol.estimate, vol.sigma, 1.0 / kappa);
        R.params["samples"] = N;
    }
    return R;
}

// ---- representation-level suites -----------------------------------------------

VerifyReport suite_gram(const SuiteConfig& c) {
    require_weight(c);
    const ReprParams p = repr_params(c);
    const std::size_t N = c.samples.value_or(1000000);
    VerifyReport R = verify_gram(p, 3, 2, {N, c.seed, 1 << 14});

    // Q-normalization tracks k
    ReprParams p2 = p;
    p2.k = p.k + 1;
    const VerifyReport R2 = verify_gram(p2, 3, 2, {N / 4, c.seed + 1, 1 << 14});
    R.flag("k → k+1: renormalized Gram again ≈ I within 3σ", R2.checks.front().pass);

    // sampled (W, z) engine on a few entries
    const QBasis Q = q_basis(p.n, p.k, 1);
    const MultiIndex s0 = MultiIndex::zero(p.n);
    MultiIndex s1 = s0;
    s1.s[0] = 1;
    const SymIndex a0(p.n);
    const PolyFunction F00 = basis_F(s0, a0, p.m, Q), F10 = basis_F(s1, a0, p.m, Q);
    const DiskFn f00 = [F00](const SJDiskPoint& x) { return F00(x); };
    const DiskFn f10 = [F10](const SJDiskPoint& x) { return F10(x); };
    const MCConfig cs{std::min<std::size_t>(N, 200000), c.seed + 2, 1 << 14};
    const MCEstimate e1 = mc_dj_inner_sampled(f00, f00, p.n, p.m, p.k, cs);
    const MCEstimate e2 = mc_dj_inner_sampled(f00, f10, p.n, p.m, p.k, cs);
    R.mc("sampled engine: ⟨F_00, F_00⟩ = 1", e1.estimate, e1.sigma, 1.0);
    R.mc("sampled engine: ⟨F_00, F_10⟩ = 0 (odd against even in z)", e2.estimate, e2.sigma, 0.0);
    R.params["samples"] = N;
    return R;
}

VerifyReport suite_isometry(const SuiteConfig& c) {
    require_weight(c);
    if (c.n != 1) throw InvalidArgument("the isometry suite runs at n = 1");
    return verify_isometry(repr_params(c), {c.samples.value_or(100000), c.seed, 1 << 14});
}

VerifyReport suite_reproducing(const SuiteConfig& c) {
    require_weight(c);
    TruncationSpec t;
    t.max_degree = c.trunc;
    t.max_a_degree = std::min(c.trunc, 6);
    return reproducing_check(repr_params(c), t, 5, {c.samples.value_or(100000), c.seed, 1 << 14});
}

VerifyReport suite_kernel_invariance(const SuiteConfig& c) {
    require_weight(c);
    VerifyReport R = verify_kernel_invariance(repr_params(c), 100, c.seed);
    Rng rng(c.seed + 3);
    double neg = 0;
    int zero_mismatch = 0;
    for (int i = 0; i < 10000; ++i) {
        const SJDiskPoint x = sample_sj_disk_point(c.n, 0.9, 2.0, rng);
        const double a = a_form(x);
        neg = std::min(neg, a);
        if (a == 0.0 && x.z.cwiseAbs().maxCoeff() > 0) ++zero_mismatch;
    }
    const double a0 = a_form(sample_disk_point(c.n, 0.9, rng).full(), CRow::Zero(c.n));
    R.flag("A(W, z) ≥ 0 on 10⁴ points", neg >= 0.0, "smallest value " + std::to_string(neg));
    R.flag("A(W, z) = 0 only at z = 0", zero_mismatch == 0 && a0 == 0.0);
    return R;
}

const std::map<std::string, std::function<VerifyReport(const SuiteConfig&)>>& registry() {
    static const std::map<std::string, std::function<VerifyReport(const SuiteConfig&)>> r = {
        {"group-axioms", suite_group_axioms},
        {"theta-iso", suite_theta_iso},
        {"actions", suite_actions},
        {"cayley", suite_cayley},
        {"cocycle", suite_cocycle},
        {"genfun", suite_genfun},
        {"expansions", suite_expansions},
        {"orthonormality-fock", suite_orthonormality_fock},
        {"pde", suite_pde},
        {"gaussian-integrals", suite_gaussian_integrals},
        {"q-basis", suite_q_basis},
        {"identities-419-421", [](const SuiteConfig& c) { return verify_identities(repr_params(c), 100, c.seed); }},
        {"jacobian-422", [](const SuiteConfig& c) { return verify_jacobian_constant(repr_params(c), 50, c.seed); }},
        {"gram-4-28", suite_gram},
        {"isometry", suite_isometry},
        {"intertwining", [](const SuiteConfig& c) { return verify_intertwining(repr_params(c), 50, c.seed); }},
        {"reproducing", suite_reproducing},
        {"kernel-invariance", suite_kernel_invariance},
    };
    return r;
}

void apply_tol(VerifyReport& R, double tol) {
    for (Check& ch : R.checks)
        if (ch.residual) {
            ch.tol = tol;
            ch.pass = std::isfinite(*ch.residual) && *ch.residual <= tol;
        }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "group-axioms", "theta-iso",          "actions",     "cayley",      "cocycle",
        "genfun",       "expansions",         "orthonormality-fock",        "pde",
        "gaussian-integrals",                 "q-basis",     "identities-419-421",
        "jacobian-422", "gram-4-28",          "isometry",    "intertwining", "reproducing",
        "kernel-invariance"};
    return names;
}

bool is_suite(const std::string& name) { return name == "all" || registry().count(name) > 0; }

VerifyReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (!is_suite(name)) throw InvalidArgument("unknown suite '" + name + "'");
    if (cfg.n < 1 || cfg.n > 4) throw InvalidArgument("dimension n must be in 1..4");
    if (!(cfg.m > 0)) throw InvalidArgument("index m must be positive");
    if (cfg.trunc < 0 || cfg.trunc > 30) throw InvalidArgument("truncation must be in 0..30");
    if (cfg.tol && !(*cfg.tol > 0)) throw InvalidArgument("tolerance must be positive");
    if (cfg.samples && *cfg.samples < 1) throw InvalidArgument("samples must be ≥ 1");

    const auto t0 = Clock::now();
    VerifyReport R;
    if (name == "all") {
        require_weight(cfg);
        R = start("all", cfg);
        for (const std::string& s : suite_names()) {
            if (s == "isometry" && cfg.n != 1) {
                R.diag_value("isometry skipped (runs at n = 1)", 0.0);
                continue;
            }
            VerifyReport sub = registry().at(s)(cfg);
            if (cfg.tol) apply_tol(sub, *cfg.tol);
            R.merge(sub);
        }
    } else {
        R = registry().at(name)(cfg);
        if (cfg.tol) apply_tol(R, *cfg.tol);
    }
    if (cfg.samples) R.params["samples"] = *cfg.samples;
    R.params["trunc"] = cfg.trunc;
    if (cfg.tol) R.params["tol"] = *cfg.tol;
    R.seed = cfg.seed;
    R.elapsed = since(t0);
    return R;
}

}  // namespace sjd
