#pragma once

#include "sjd/groups.hpp"

namespace sjd {

// ---- symplectic factors and kernels ----------------------------------------

CMatrix j1(const SpElement& s, const UpperHalfPoint& omega);
CMatrix k1(const UpperHalfPoint& omega_p, const UpperHalfPoint& omega);
CMatrix j1_star(const SpStarElement& w, const DiskPoint& W);
CMatrix k1_star(const DiskPoint& Wp, const DiskPoint& W);

// ---- Jacobi factors and kernels -------------------------------------------

cplx theta_factor(const JacobiElement& g, const SJSpacePoint& x);
// −½(ζ′−ζ̄)(Ω′−Ω̄′)⁻¹ᵗ(ζ′−ζ̄), with Ω̄′ (not Ω̄) in the inverse.
cplx k2_space(const SJSpacePoint& xp, const SJSpacePoint& x);
cplx theta_star(const JacobiStarElement& gs, const SJDiskPoint& x);

// A(W, z) and A(W′, z′; W, z); holomorphic in the primed point.
double a_form(const CMatrix& W, const CRow& z);
double a_form(const SJDiskPoint& x);
cplx a_polar(const SJDiskPoint& xp, const SJDiskPoint& x);

// ---- representation-level factors (index m, weight k) ----------------------

cplx jmk(const JacobiElement& g, const SJSpacePoint& x, double m, double k);
// Factor transported from jmk through the Cayley map: det(q̄W+p̄)^{−k}·exp(−4πm θ★),
// i.e. the exponent reads θ = 2iθ★ (the centre ϰ corresponds to κ = 2iϰ).
cplx jmk_star(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k);
// exp(2πim θ★)·det(q̄W+p̄)^{−k} with θ★ taken literally (not unimodular on the centre).
cplx jmk_star_naive(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k);

// Invariant weight on ℌₙᴶ: (det Y)^{−k}·exp(4πm ηY⁻¹ᵗη).
double kmk_weight(const SJSpacePoint& x, double m, double k);
// exp(4πm ηY⁻¹ᵗη)·(det Y)^{k}: the sign of k flipped; not invariant, kept for comparison.
double kmk_weight_naive(const SJSpacePoint& x, double m, double k);
// det((i/2)Ω̄ − (i/2)Ω′)^{−k}·exp(2πim K₂).
cplx kmk_kernel(const SJSpacePoint& xp, const SJSpacePoint& x, double m, double k);

// det(I−WW̄)^{−k}·exp(8πm A(W,z))
double kmk_star_weight(const SJDiskPoint& x, double m, double k);
// det(I−W′W̄)^{−k}·exp(8πm A(W′,z′;W,z))
cplx kmk_star_kernel(const SJDiskPoint& xp, const SJDiskPoint& x, double m, double k);

// ---- the chart in which the invariant weight lives ---------------------------
// The starred action and the Cayley map use the W-sign opposite to A(W,z); with
// ι(W,z) = (−W,z) the kernel-chart action is ι∘act_sj_disk∘ι and its factor is jmk_star at ιx.

SJDiskPoint act_kernel_chart(const JacobiStarElement& gs, const SJDiskPoint& x);
cplx jmk_star_kernel_chart(const JacobiStarElement& gs, const SJDiskPoint& x, double m, double k);

}  // namespace sjd
