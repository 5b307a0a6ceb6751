#pragma once

#include <map>
#include <optional>
#include <string>

#include "sjd/kernels.hpp"

namespace sjd {

struct MonomialKey {
    MultiIndex s;  // z-exponents
    SymIndex a;    // W-exponents (upper triangle)
    auto operator<=>(const MonomialKey&) const = default;
};

// Finite combination Σ c·z^s·W^a; never stores zero coefficients.
class PolyFunction {
public:
    using TermMap = std::map<MonomialKey, cplx>;

    PolyFunction() = default;
    explicit PolyFunction(int n) : n_(n) {}
    static PolyFunction constant(int n, cplx c);
    static PolyFunction monomial(const MultiIndex& s, const SymIndex& a, cplx c = 1.0);
    static PolyFunction z_monomial(const MultiIndex& s, cplx c = 1.0);
    static PolyFunction w_monomial(const SymIndex& a, cplx c = 1.0);

    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    cplx coefficient(const MultiIndex& s, const SymIndex& a) const;

    void add_term(const MultiIndex& s, const SymIndex& a, cplx c);

    PolyFunction operator+(const PolyFunction& o) const;
    PolyFunction operator-(const PolyFunction& o) const;
    PolyFunction operator*(const PolyFunction& o) const;
    PolyFunction operator*(cplx c) const;
    PolyFunction& operator+=(const PolyFunction& o);

    cplx evaluate(const CRow& z, const CSymMatrix& W) const;
    cplx operator()(const SJDiskPoint& x) const { return evaluate(x.z, x.w.w()); }

    PolyFunction derivative_z(int j) const;
    PolyFunction derivative_w(int i, int j) const;  // ∂/∂W_ij, i ≤ j as independent variable
    PolyFunction substitute_w(const CSymMatrix& W) const;
    PolyFunction scale_z(cplx c) const;  // p(c·z, W)
    PolyFunction conjugate_coefficients() const;

    int max_z_degree() const;
    int max_w_degree() const;
    bool depends_on_w() const;
    bool depends_on_z() const;
    double max_abs_coefficient() const;

private:
    int n_ = 0;
    TermMap terms_;
};

// max |coefficient of (a − b)|
double coefficient_distance(const PolyFunction& a, const PolyFunction& b);

// ---- matching polynomials -------------------------------------------------

// Σ_a s!/(2^â a!(s−w(a))!) Z^{s−w(a)} W^a, w(a)_k = ã_k + a_kk.
PolyFunction p_s(const MultiIndex& s);
// Independent construction: s!·[U^s] exp(UᵗZ + ½UWᵗU), expanded in exact rationals.
PolyFunction p_s_from_generating(const MultiIndex& s);

inline double fock_scale(double m) { return std::sqrt(8.0 * kPi * m); }  // 2√(2πm)

PolyFunction basis_phi(const DiskPoint& W, const MultiIndex& s, double m);
PolyFunction basis_f(const MultiIndex& s, double m);

// Orthonormal polynomials in W for ⟨F,G⟩ = ∫ F Ḡ det(I−WW̄)^{k−1/2} dμ(W).
struct QBasis {
    int n = 1;
    double k = 3;
    bool exact = true;  // closed form (n = 1) vs Monte Carlo Gram–Schmidt
    std::vector<SymIndex> index;
    std::vector<PolyFunction> q;

    const PolyFunction& operator[](const SymIndex& a) const;
    std::optional<size_t> position(const SymIndex& a) const;
};

struct QBasisOptions {
    std::size_t samples = 200000;
    std::uint64_t seed = 20240611;
};

QBasis q_basis(int n, double k, int max_degree, const QBasisOptions& opt = {});
// Σ_a |Q_a(0)|² = 1 / ∫ det(I−WW̄)^{k−n−3/2} Π dRe W_ij dIm W_ij
double berezin_constant(int n, double k);

PolyFunction basis_F(const MultiIndex& s, const SymIndex& a, double m, const QBasis& Q, double c_star = 1.0);

// ---- expansions -----------------------------------------------------------

enum class TailMode { GeometricBound, LastTerm };

struct TruncationSpec {
    int max_degree = 10;
    int max_a_degree = -1;  // Fock426 only; −1 means max_degree
    TailMode tail = TailMode::GeometricBound;
};

enum class Expansion { H11, H27, H35, Fock426 };
Expansion expansion_from_string(const std::string& s);
std::string to_string(Expansion e);

struct ExpansionResult {
    cplx partial_sum;
    double tail_estimate;
    cplx closed_form;
    std::vector<cplx> partial_by_degree;  // cumulative, grade-major
};

struct ExpansionParams {
    double m = 0.25;
    double k = 3;
    double c_star = 1.0;
    const QBasis* q = nullptr;  // required for Fock426
};

// H11 uses (z, W) as (Z, W) directly; H27 evaluates both factors at the W of x.
ExpansionResult kernel_expansion_truncated(const SJDiskPoint& xp, const SJDiskPoint& x, Expansion which,
                                           const TruncationSpec& trunc, const ExpansionParams& p = {});
cplx expansion_closed_form(const SJDiskPoint& xp, const SJDiskPoint& x, Expansion which,
                           const ExpansionParams& p = {});

// ---- PDE characterization --------------------------------------------------

// max over (j ≤ k) and monomials of |∂²f/∂z_j∂z_k − c(1+δ_jk)∂f/∂W_jk|
double pde_residual(const PolyFunction& f, double coupling);
inline double pde_check(const PolyFunction& f, double m) { return pde_residual(f, 8.0 * kPi * m); }

// Coefficients c_s(W) with p = Σ_s c_s(W)·f_s, by triangular back-substitution in z-degree.
std::map<MultiIndex, PolyFunction> expand_in_f_basis(const PolyFunction& p, double m);

}  // namespace sjd
