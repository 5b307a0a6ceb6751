#include "sjd/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace sjd {

CSymMatrix CSymMatrix::from_full(const CMatrix& M, double tol) {
    if (M.rows() != M.cols()) throw InvalidArgument("symmetric matrix must be square");
    const int n = static_cast<int>(M.rows());
    const double scale = std::max(1.0, max_abs(M));
    CSymMatrix S(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (std::abs(M(i, j) - M(j, i)) > tol * scale) {
                std::ostringstream os;
                os << "matrix is not symmetric (entry " << i << "," << j << ")";
                throw InvalidArgument(os.str());
            }
            S(i, j) = 0.5 * (M(i, j) + M(j, i));
        }
    return S;
}

CMatrix CSymMatrix::full() const {
    CMatrix M(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) M(i, j) = (*this)(i, j);
    return M;
}

double max_abs(const CMatrix& A) {
    return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

double largest_singular_value(const CMatrix& A) {
    Eigen::JacobiSVD<CMatrix> svd(A);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

namespace {

Eigen::PartialPivLU<CMatrix> guarded_lu(const CMatrix& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("solve: matrix must be square");
    if (!A.allFinite()) throw InvalidArgument("solve: non-finite entries");
    Eigen::PartialPivLU<CMatrix> lu(A);
    const double rc = lu.rcond();
    const double cond = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond < kConditionGuard)) {
        std::ostringstream os;
        os << "singular or ill-conditioned matrix (condition estimate " << cond << ")";
        throw SingularMatrix(os.str(), cond);
    }
    return lu;
}

}  // namespace

CMatrix solve(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != B.rows()) throw InvalidArgument("solve: dimension mismatch");
    return guarded_lu(A).solve(B);
}

CMatrix inverse(const CMatrix& A) {
    return guarded_lu(A).inverse();
}

CMatrix solve_right(const CMatrix& A, const CMatrix& B) {
    // X A = B  <=>  ᵗA ᵗX = ᵗB
    if (A.cols() != B.cols()) throw InvalidArgument("solve_right: dimension mismatch");
    return solve(A.transpose(), B.transpose()).transpose();
}

PosdefCertificate posdef_certificate(const CMatrix& H, double threshold) {
    if (H.rows() != H.cols()) throw InvalidArgument("posdef_certificate: matrix must be square");
    const double scale = std::max(1.0, max_abs(H));
    if (max_abs(H - H.adjoint()) > 1e-12 * scale)
        throw InvalidArgument("posdef_certificate: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    return {lo > threshold, lo};
}

PosdefCertificate posdef_certificate(const RMatrix& H, double threshold) {
    return posdef_certificate(CMatrix(H.cast<cplx>()), threshold);
}

cplx principal_logdet(const CMatrix& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("principal_logdet: matrix must be square");
    if (A.rows() == 0) return 0.0;
    Eigen::PartialPivLU<CMatrix> lu(A);
    const CMatrix& U = lu.matrixLU();
    cplx acc = 0.0;
    for (int i = 0; i < U.rows(); ++i) {
        if (U(i, i) == cplx(0)) throw SingularMatrix("principal_logdet: singular matrix", INFINITY);
        acc += std::log(U(i, i));
    }
    if (lu.permutationP().determinant() < 0) acc += cplx(0, kPi);
    double im = std::remainder(acc.imag(), 2 * kPi);  // in [−π, π]
    if (im <= -kPi) im += 2 * kPi;
    return {acc.real(), im};
}

cplx det_power(const CMatrix& A, double alpha) {
    if (alpha == std::round(alpha) && std::abs(alpha) <= 64) {
        const cplx d = A.rows() == 0 ? cplx(1) : A.determinant();
        if (d == cplx(0)) throw SingularMatrix("det_power: singular matrix", INFINITY);
        return std::pow(d, static_cast<int>(alpha));
    }
    return std::exp(alpha * principal_logdet(A));
}

CMatrix matrix_exp(const CMatrix& A) {
    if (!A.allFinite()) throw InvalidArgument("matrix_exp: non-finite entries");
    return A.exp();
}

RMatrix matrix_exp(const RMatrix& A) {
    if (!A.allFinite()) throw InvalidArgument("matrix_exp: non-finite entries");
    return A.exp();
}

// ---- multi-indices -------------------------------------------------------

std::int64_t factorial_i64(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

int MultiIndex::total() const {
    int t = 0;
    for (int v : s) t += v;
    return t;
}

std::int64_t MultiIndex::factorial_exact() const {
    std::int64_t f = 1;
    for (int v : s) f *= factorial_i64(v);
    return f;
}

double MultiIndex::factorial() const {
    double f = 1;
    for (int v : s) f *= std::tgamma(v + 1.0);
    return f;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] > o.s[i]) return false;
    return true;
}

SymIndex::SymIndex(int n, std::vector<int> upper) : dim(n), a(std::move(upper)) {
    if (a.size() != static_cast<size_t>(n * (n + 1) / 2))
        throw InvalidArgument("SymIndex: wrong number of upper-triangle entries");
}

namespace {
inline size_t sym_pos(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<size_t>(i * n - i * (i - 1) / 2 + (j - i));
}
}  // namespace

int SymIndex::operator()(int i, int j) const { return a[sym_pos(dim, i, j)]; }
int& SymIndex::at(int i, int j) { return a[sym_pos(dim, i, j)]; }

int SymIndex::hat() const {
    int h = 0;
    for (int i = 0; i < dim; ++i) h += (*this)(i, i);
    return h;
}

int SymIndex::tilde(int k) const {
    int t = 0;
    for (int i = 0; i < dim; ++i) t += (*this)(i, k);
    return t;
}

MultiIndex SymIndex::weight() const {
    MultiIndex w = MultiIndex::zero(dim);
    for (int k = 0; k < dim; ++k) w.s[k] = weight(k);
    return w;
}

int SymIndex::degree() const {
    int d = 0;
    for (int v : a) d += v;
    return d;
}

std::int64_t SymIndex::factorial_exact() const {
    std::int64_t f = 1;
    for (int v : a) f *= factorial_i64(v);
    return f;
}

bool SymIndex::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

std::vector<MultiIndex> enumerate_multiindices(int n, int max_total) {
    std::vector<MultiIndex> out;
    for (int t = 0; t <= max_total; ++t) {
        std::vector<MultiIndex> grade;
        std::vector<int> cur(n, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == n - 1) {
                cur[pos] = left;
                grade.emplace_back(cur);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        if (n == 0) {
            if (t == 0) out.emplace_back(std::vector<int>{});
            continue;
        }
        rec(0, t);
        std::sort(grade.begin(), grade.end());
        out.insert(out.end(), grade.begin(), grade.end());
    }
    return out;
}

namespace {

std::vector<SymIndex> symindices_filtered(int n, int max_degree,
                                          const std::function<bool(const SymIndex&)>& keep) {
    const int len = n * (n + 1) / 2;
    std::vector<SymIndex> out;
    for (int d = 0; d <= max_degree; ++d) {
        // reuse the multi-index enumerator on the upper-triangle coordinates
        for (const MultiIndex& m : enumerate_multiindices(len, d)) {
            if (m.total() != d) continue;
            SymIndex a(n, m.s);
            if (keep(a)) out.push_back(a);
        }
    }
    return out;
}

}  // namespace

std::vector<SymIndex> enumerate_symindices(int n, int max_weight) {
    // every entry contributes at least 1 to some weight, so degree ≤ n·max_weight bounds the search
    return symindices_filtered(n, n * max_weight, [&](const SymIndex& a) {
        for (int k = 0; k < n; ++k)
            if (a.weight(k) > max_weight) return false;
        return true;
    });
}

std::vector<SymIndex> enumerate_symindices_by_degree(int n, int max_degree) {
    return symindices_filtered(n, max_degree, [](const SymIndex&) { return true; });
}

cplx monomial(const CRow& z, const MultiIndex& s) {
    cplx v = 1.0;
    for (int i = 0; i < s.n(); ++i)
        for (int e = 0; e < s[i]; ++e) v *= z(i);
    return v;
}

cplx monomial(const CSymMatrix& W, const SymIndex& a) {
    cplx v = 1.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = i; j < a.n(); ++j)
            for (int e = 0; e < a(i, j); ++e) v *= W(i, j);
    return v;
}

}  // namespace sjd
