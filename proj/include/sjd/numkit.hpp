#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sjd/errors.hpp"

namespace sjd {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CRow = Eigen::RowVectorXcd;
using RMatrix = Eigen::MatrixXd;
using RRow = Eigen::RowVectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPositivityThreshold = 1e-12;
inline constexpr double kConditionGuard = 1e12;

// Symmetric complex matrix; only the upper triangle is stored, so ᵗM = M holds exactly.
class CSymMatrix {
public:
    CSymMatrix() = default;
    explicit CSymMatrix(int n) : n_(n), e_(static_cast<size_t>(n * (n + 1) / 2), cplx(0)) {}

    // Symmetrizes; throws InvalidArgument if M departs from symmetry by more than tol (relative).
    static CSymMatrix from_full(const CMatrix& M, double tol = 1e-9);

    int n() const { return n_; }
    cplx operator()(int i, int j) const { return e_[index(i, j)]; }
    cplx& operator()(int i, int j) { return e_[index(i, j)]; }
    CMatrix full() const;
    const std::vector<cplx>& upper() const { return e_; }
    std::vector<cplx>& upper() { return e_; }

private:
    size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<size_t>(i * n_ - i * (i - 1) / 2 + (j - i));
    }
    int n_ = 0;
    std::vector<cplx> e_;
};

// ---- linear algebra ------------------------------------------------------

CMatrix solve(const CMatrix& A, const CMatrix& B);
CMatrix inverse(const CMatrix& A);
// Solves X·A = B (row-vector convention used throughout the formulas).
CMatrix solve_right(const CMatrix& A, const CMatrix& B);

struct PosdefCertificate {
    bool positive;
    double min_eigenvalue;
};
PosdefCertificate posdef_certificate(const CMatrix& H, double threshold = kPositivityThreshold);
PosdefCertificate posdef_certificate(const RMatrix& H, double threshold = kPositivityThreshold);

cplx principal_logdet(const CMatrix& A);
// exp(alpha · principal_logdet(A)); integer alpha gives det(A)^alpha independent of branch.
cplx det_power(const CMatrix& A, double alpha);
CMatrix matrix_exp(const CMatrix& A);
RMatrix matrix_exp(const RMatrix& A);

double max_abs(const CMatrix& A);
double largest_singular_value(const CMatrix& A);

// ---- multi-indices -------------------------------------------------------

struct MultiIndex {
    std::vector<int> s;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> v) : s(std::move(v)) {}
    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }

    int n() const { return static_cast<int>(s.size()); }
    int total() const;
    double factorial() const;          // s! = ∏ s_i!
    std::int64_t factorial_exact() const;
    bool leq(const MultiIndex& o) const;  // componentwise
    int operator[](int i) const { return s[i]; }
    auto operator<=>(const MultiIndex&) const = default;
};

// Symmetric natural matrix a ∈ Aₙ, upper triangle stored row-major.
struct SymIndex {
    int dim = 0;
    std::vector<int> a;

    SymIndex() = default;
    explicit SymIndex(int n) : dim(n), a(static_cast<size_t>(n * (n + 1) / 2), 0) {}
    SymIndex(int n, std::vector<int> upper);

    int n() const { return dim; }
    int operator()(int i, int j) const;
    int& at(int i, int j);
    int hat() const;                 // Σ a_ii
    int tilde(int k) const;          // Σ_i a_ik
    int weight(int k) const { return tilde(k) + (*this)(k, k); }
    MultiIndex weight() const;
    int degree() const;              // Σ_{i≤j} a_ij
    std::int64_t factorial_exact() const;  // ∏_{i≤j} (a_ij)!
    double factorial() const { return static_cast<double>(factorial_exact()); }
    bool is_zero() const;
    auto operator<=>(const SymIndex&) const = default;
};

std::vector<MultiIndex> enumerate_multiindices(int n, int max_total);
// All a with max_k w(a)_k ≤ max_weight; ordered by degree, then lexicographically on the upper triangle.
std::vector<SymIndex> enumerate_symindices(int n, int max_weight);
// All a with Σ_{i≤j} a_ij ≤ max_degree, same order.
std::vector<SymIndex> enumerate_symindices_by_degree(int n, int max_degree);

// ∏ z_i^{s_i} and ∏_{i≤j} W_ij^{a_ij}
cplx monomial(const CRow& z, const MultiIndex& s);
cplx monomial(const CSymMatrix& W, const SymIndex& a);

std::int64_t factorial_i64(int k);

}  // namespace sjd
