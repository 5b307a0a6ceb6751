#pragma once

#include "sjd/domains.hpp"

namespace sjd {

// σ = [[a, b], [c, d]] ∈ Sp(n, ℝ), ᵗσJσ = J.
struct SpElement {
    RMatrix a, b, c, d;

    SpElement() = default;
    SpElement(RMatrix a_, RMatrix b_, RMatrix c_, RMatrix d_, double tol = 1e-10);
    static SpElement from_full(const RMatrix& s, double tol = 1e-10);
    static SpElement identity(int n);
    static SpElement j_matrix(int n);  // a = d = 0, b = I, c = −I

    int n() const { return static_cast<int>(a.rows()); }
    RMatrix full() const;
    double symplectic_residual() const;
};

// ω = [[p, q], [q̄, p̄]] ∈ Sp(n, ℝ)★.
struct SpStarElement {
    CMatrix p, q;

    SpStarElement() = default;
    SpStarElement(CMatrix p_, CMatrix q_, double tol = 1e-10);
    static SpStarElement identity(int n);

    int n() const { return static_cast<int>(p.rows()); }
    CMatrix full() const;
    double invariant_residual() const;
};

struct HeisenbergElement {
    RRow lambda, mu;
    double kappa = 0;

    static HeisenbergElement identity(int n) { return {RRow::Zero(n), RRow::Zero(n), 0.0}; }
    int n() const { return static_cast<int>(lambda.size()); }
};

struct JacobiElement {
    SpElement sigma;
    HeisenbergElement h;

    static JacobiElement identity(int n) { return {SpElement::identity(n), HeisenbergElement::identity(n)}; }
    int n() const { return sigma.n(); }
};

// (ω, (α, ϰ)), ϰ purely imaginary.
struct JacobiStarElement {
    SpStarElement omega;
    CRow alpha;
    cplx varkappa;

    JacobiStarElement() = default;
    JacobiStarElement(SpStarElement w, CRow a, cplx vk);
    static JacobiStarElement identity(int n);
    static JacobiStarElement central(int n, cplx vk) { return {SpStarElement::identity(n), CRow::Zero(n), vk}; }
    int n() const { return omega.n(); }
};

RMatrix j_matrix(int n);

SpElement sp_mul(const SpElement& x, const SpElement& y);
SpElement sp_inverse(const SpElement& x);
SpStarElement sp_star_mul(const SpStarElement& x, const SpStarElement& y);
SpStarElement sp_star_inverse(const SpStarElement& x);

HeisenbergElement heisenberg_mul(const HeisenbergElement& h, const HeisenbergElement& hp);
HeisenbergElement heisenberg_inverse(const HeisenbergElement& h);

JacobiElement jacobi_mul(const JacobiElement& g, const JacobiElement& gp);
JacobiElement jacobi_inverse(const JacobiElement& g);

// jacobi_star_mul(g★′, g★): β = α′p + ᾱ′q̄ with p, q taken from g★.
JacobiStarElement jacobi_star_mul(const JacobiStarElement& gsp, const JacobiStarElement& gs);
JacobiStarElement jacobi_star_inverse(const JacobiStarElement& gs);

SpStarElement theta_iso(const SpElement& s);
SpElement theta_inv(const SpStarElement& w);
JacobiStarElement theta_iso(const JacobiElement& g);
JacobiElement theta_inv(const JacobiStarElement& gs);

UpperHalfPoint act_upper_half(const SpElement& s, const UpperHalfPoint& omega);
DiskPoint act_disk(const SpStarElement& w, const DiskPoint& W);
SJSpacePoint act_sj_space(const JacobiElement& g, const SJSpacePoint& x);
SJDiskPoint act_sj_disk(const JacobiStarElement& gs, const SJDiskPoint& x);

SpElement random_sp(int n, double scale, Rng& rng);
SpElement random_sp(int n, double scale, std::uint64_t seed);
JacobiElement random_jacobi(int n, double scale, Rng& rng);
JacobiElement random_jacobi(int n, double scale, std::uint64_t seed);
JacobiStarElement random_jacobi_star(int n, double scale, Rng& rng);

// residual helpers (max-abs differences)
double distance(const SpElement& x, const SpElement& y);
double distance(const SpStarElement& x, const SpStarElement& y);
double distance(const HeisenbergElement& x, const HeisenbergElement& y);
double distance(const JacobiElement& x, const JacobiElement& y);
double distance(const JacobiStarElement& x, const JacobiStarElement& y);
double distance(const SJSpacePoint& x, const SJSpacePoint& y);
double distance(const SJDiskPoint& x, const SJDiskPoint& y);

}  // namespace sjd
