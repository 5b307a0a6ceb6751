#include <cmath>

#include "sjd/fockpoly.hpp"
#include "sjd/quad.hpp"

namespace sjd {

QBasis q_basis(int n, double k, int max_degree, const QBasisOptions& opt) {
    if (n < 1) throw InvalidArgument("dimension n must be ≥ 1");
    if (!(k > n + 0.5)) throw InvalidArgument("weight must satisfy k > n + 1/2");
    if (max_degree < 0) throw InvalidArgument("Q-basis degree must be ≥ 0");

    QBasis Q;
    Q.n = n;
    Q.k = k;
    Q.index = enumerate_symindices_by_degree(n, max_degree);

    if (n == 1) {
        // ∫|w|^{2a}(1−|w|²)^{k−5/2} dA = π·B(a+1, k−3/2)
        Q.exact = true;
        for (const SymIndex& a : Q.index) {
            const double A = a.a[0];
            const double logB = std::lgamma(A + 1) + std::lgamma(k - 1.5) - std::lgamma(A + k - 0.5);
            Q.q.push_back(PolyFunction::w_monomial(a, 1.0 / std::sqrt(kPi * std::exp(logB))));
        }
        return Q;
    }

    // Modified Gram–Schmidt, twice, in the sampled inner product.
    Q.exact = false;
    std::vector<PolyFunction> mono;
    for (const SymIndex& a : Q.index) mono.push_back(PolyFunction::w_monomial(a));
    const GramEstimate G = mc_disk_gram(mono, n, k, {opt.samples, opt.seed, 1 << 14});
    const auto N = static_cast<Eigen::Index>(mono.size());
    CMatrix R = CMatrix::Identity(N, N);  // row i: coefficients of Q_i in the monomials
    auto inner = [&](Eigen::Index i, Eigen::Index j) -> cplx {
        return (R.row(i) * G.mean * R.row(j).adjoint())(0, 0);
    };
    for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index i = 0; i < N; ++i) {
            for (Eigen::Index j = 0; j < i; ++j) R.row(i) -= inner(i, j) * R.row(j);
            const double nrm = std::sqrt(inner(i, i).real());
            if (!(nrm > 1e-12)) throw SingularMatrix("Q-basis: monomials numerically dependent", 0.0);
            R.row(i) /= nrm;
        }
    for (Eigen::Index i = 0; i < N; ++i) {
        PolyFunction p(n);
        for (Eigen::Index j = 0; j <= i; ++j)
            if (R(i, j) != cplx(0)) p.add_term(MultiIndex{std::vector<int>(static_cast<size_t>(n), 0)}, Q.index[static_cast<size_t>(j)], R(i, j));
        Q.q.push_back(p);
    }
    return Q;
}

}  // namespace sjd
