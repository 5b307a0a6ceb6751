#pragma once

#include <functional>

#include "sjd/fockpoly.hpp"

namespace sjd {

// exp(−xᵀQx), x = (Re z, Im z) ∈ ℝ²ⁿ.
struct GaussianForm {
    int n = 1;
    RMatrix Q;

    GaussianForm() = default;
    GaussianForm(int n_, RMatrix Q_);
    static GaussianForm standard(int n) { return {n, RMatrix::Identity(2 * n, 2 * n)}; }
    // scale·A(W, z)
    static GaussianForm from_a_form(const DiskPoint& W, double scale);
    // Polarization of a real quadratic function of z.
    static GaussianForm from_quadratic(int n, const std::function<double(const CRow&)>& q);

    double normalization() const;  // ∫exp(−xᵀQx) dx = πⁿ/√det Q
};

// Σ c·z^α·z̄^β
struct ZZbarPoly {
    int n = 1;
    std::map<std::pair<std::vector<int>, std::vector<int>>, cplx> terms;

    void add(const std::vector<int>& alpha, const std::vector<int>& beta, cplx c);
    int max_degree() const;
    cplx evaluate(const CRow& z) const;
};

// f(z)·conj(g(z)) for z-only polynomials.
ZZbarPoly zzbar_product(const PolyFunction& f, const PolyFunction& g);

// Moments E[z^α z̄^β] of the normalized Gaussian exp(−xᵀQx)/normalization, by Isserlis pairing.
class ComplexGaussianMoments {
public:
    ComplexGaussianMoments(const GaussianForm& g, int max_degree);
    cplx operator()(const std::vector<int>& alpha, const std::vector<int>& beta) const;
    const CMatrix& pz() const { return P_; }   // E[z_i z_j]
    const CMatrix& czz() const { return C_; }  // E[z_i z̄_j]

private:
    size_t index(const std::vector<int>& alpha, const std::vector<int>& beta) const;
    cplx compute(std::vector<int>& alpha, std::vector<int>& beta) const;
    int n_, D_;
    CMatrix P_, C_;
    mutable std::vector<cplx> memo_;
    mutable std::vector<char> known_;
};

// ∫ p(z, z̄)·exp(−xᵀQx) dx over ℝ²ⁿ (plain Lebesgue).
cplx gaussian_moment(const ZZbarPoly& p, const GaussianForm& g);
// Same integral on a tensor Gauss–Hermite grid after whitening.
cplx gauss_hermite_moment(const ZZbarPoly& p, const GaussianForm& g, int order);
// Nodes/weights for ∫e^{−u²}f(u)du (Golub–Welsch).
void gauss_hermite_rule(int order, std::vector<double>& nodes, std::vector<double>& weights);
void gauss_legendre_rule(int order, std::vector<double>& nodes, std::vector<double>& weights);

// ∫U^sŪ^r e^{−|U|²} dν(U), dν = π^{−n}d²ⁿU
cplx bargmann_moment(const MultiIndex& s, const MultiIndex& r);

// ∫exp(−|Z|² − ½(ZW̄ᵗZ + Z̄WᵗZ̄)) d²ⁿZ
cplx matrix_gaussian_integral(const DiskPoint& W);
cplx matrix_gaussian_closed_form(const DiskPoint& W);
// n = 1 only: tensor Gauss–Legendre on a box, independent of the Gaussian algebra.
cplx matrix_gaussian_box_quadrature(const DiskPoint& W, int order = 160, double half_width = 9.0);

// |LHS − RHS| of the Fock-space integral of two truncated generating series.
double verify_h9(const SJDiskPoint& xp, const SJDiskPoint& x, int trunc);

enum class FockNormalization { Nominal, Calibrated };

cplx fock_inner(const PolyFunction& f, const PolyFunction& g, const DiskPoint& W, double m,
                FockNormalization norm);

struct Calibration {
    int n;
    double m;
    double nominal;      // (2πm)ⁿ
    double calibrated;  // c with c·∫exp(−8πmA(0,z))dν(z) = 1
    double ratio;
};
Calibration calibrate_norms(int n, double m);

// ---- Monte Carlo ------------------------------------------------------------

struct MCConfig {
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    std::size_t batch = 1 << 14;
};

struct MCEstimate {
    cplx estimate;
    double sigma;
    std::size_t samples;
    std::uint64_t seed;
    double elapsed;
};

struct GramEstimate {
    CMatrix mean;
    RMatrix sigma;
    std::size_t samples;
    std::uint64_t seed;
    double elapsed;
};

using DiskFn = std::function<cplx(const SJDiskPoint&)>;
using SpaceFn = std::function<cplx(const SJSpacePoint&)>;

// ∫ F Ḡ det(I−WW̄)^{k−1/2} dμ(W), dμ = det(I−WW̄)^{−n−1}∏dRe W_ij dIm W_ij.
MCEstimate mc_disk_inner(const PolyFunction& F, const PolyFunction& G, int n, double k, const MCConfig& cfg);
GramEstimate mc_disk_gram(const std::vector<PolyFunction>& basis, int n, double k, const MCConfig& cfg);

// C★∫ψ₁ψ̄₂ (kmk_star_weight)⁻¹ dν, where the z-part of dν carries π^{−n}.
// The z-integral is exact (Gaussian moments); only W is sampled.
GramEstimate mc_dj_gram(const std::vector<PolyFunction>& basis, int n, double m, double k, const MCConfig& cfg,
                        double c_star = 1.0);
MCEstimate mc_dj_inner(const PolyFunction& f, const PolyFunction& g, int n, double m, double k,
                       const MCConfig& cfg, double c_star = 1.0);
// Fully sampled variant for arbitrary functions: W uniform, z from the conditional Gaussian.
MCEstimate mc_dj_inner_sampled(const DiskFn& f, const DiskFn& g, int n, double m, double k, const MCConfig& cfg,
                               double c_star = 1.0);
// C∫φ₁φ̄₂ (kmk_weight)⁻¹ (det Y)^{−n−2} dξ dη dX dY, sampled by pushing the disk proposal
// through y = φ(ι(W,z)) with the analytic Jacobian.
MCEstimate mc_hj_inner(const SpaceFn& f, const SpaceFn& g, int n, double m, double k, const MCConfig& cfg,
                       double c_const);

// ---- finite differences -----------------------------------------------------

Eigen::MatrixXd finite_difference_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double h = 1e-5);

// Real coordinates (Re W_ij, Im W_ij (i ≤ j), Re z, Im z) and (X_ij, Y_ij, ξ, η).
Eigen::VectorXd real_coordinates(const SJDiskPoint& x);
Eigen::VectorXd real_coordinates(const SJSpacePoint& y);
SJDiskPoint disk_point_from_real(int n, const Eigen::VectorXd& v);
// |det Dφ| of the partial Cayley map in real coordinates (closed form).
double cayley_jacobian(const SJDiskPoint& x);
double cayley_jacobian_fd(const SJDiskPoint& x, double h = 1e-5);

}  // namespace sjd
