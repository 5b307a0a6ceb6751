#include "sjd/domains.hpp"

#include <cmath>

namespace sjd {

namespace {

CMatrix disk_gap(const CMatrix& w) {
    const int n = static_cast<int>(w.rows());
    return CMatrix::Identity(n, n) - w * w.conjugate();
}

}  // namespace

bool UpperHalfPoint::contains(const CMatrix& omega) {
    const RMatrix Y = omega.imag();
    return posdef_certificate(RMatrix(0.5 * (Y + Y.transpose()))).positive;
}

UpperHalfPoint::UpperHalfPoint(const CSymMatrix& omega) : omega_(omega) {
    const RMatrix Y = omega_.full().imag();
    if (!posdef_certificate(Y).positive) throw DomainError("Im Ω is not positive definite");
}

bool DiskPoint::contains(const CMatrix& w) {
    const CMatrix G = disk_gap(w);
    return posdef_certificate(CMatrix(0.5 * (G + G.adjoint()))).positive;
}

DiskPoint::DiskPoint(const CSymMatrix& w) : w_(w) {
    // W symmetric ⇒ W̄ = W†, so I − WW̄ is Hermitian.
    const CMatrix G = disk_gap(w_.full());
    if (!posdef_certificate(CMatrix(0.5 * (G + G.adjoint()))).positive)
        throw DomainError("I − WW̄ is not positive definite");
}

SJSpacePoint make_space_point(const CMatrix& omega, const CRow& zeta) {
    if (zeta.size() != omega.rows()) throw InvalidArgument("ζ has wrong length");
    return {UpperHalfPoint(omega), zeta};
}

SJDiskPoint make_disk_point(const CMatrix& w, const CRow& z) {
    if (z.size() != w.rows()) throw InvalidArgument("z has wrong length");
    return {DiskPoint(w), z};
}

UpperHalfPoint cayley_forward(const DiskPoint& w) {
    const int n = w.n();
    const CMatrix I = CMatrix::Identity(n, n);
    const CMatrix W = w.full();
    return UpperHalfPoint(cplx(0, 1) * solve_right(I - W, I + W));
}

DiskPoint cayley_inverse(const UpperHalfPoint& omega) {
    const int n = omega.n();
    const CMatrix iI = cplx(0, 1) * CMatrix::Identity(n, n);
    const CMatrix O = omega.full();
    return DiskPoint(solve_right(O + iI, O - iI));
}

SJSpacePoint cayley_forward(const SJDiskPoint& x) {
    const int n = x.n();
    const CMatrix I = CMatrix::Identity(n, n);
    const CMatrix W = x.w.full();
    const CMatrix ImW = I - W;
    // Ω = i(I+W)(I−W)⁻¹, ζ = 2i z (I−W)⁻¹
    CMatrix omega = cplx(0, 1) * solve_right(ImW, I + W);
    CRow zeta = cplx(0, 2) * solve_right(ImW, x.z);
    return {UpperHalfPoint(omega), zeta};
}

SJDiskPoint cayley_inverse(const SJSpacePoint& y) {
    const int n = y.n();
    const CMatrix iI = cplx(0, 1) * CMatrix::Identity(n, n);
    const CMatrix O = y.omega.full();
    // W = (Ω−iI)(Ω+iI)⁻¹, z = ζ(Ω+iI)⁻¹
    CMatrix W = solve_right(O + iI, O - iI);
    CRow z = solve_right(O + iI, y.zeta);
    return {DiskPoint(W), z};
}

SJDiskPoint reflect(const SJDiskPoint& x) {
    return {DiskPoint(CMatrix(-x.w.full())), x.z};
}

// ---- sampling ------------------------------------------------------------

namespace {

CMatrix random_symmetric_complex(int n, Rng& rng) {
    std::normal_distribution<double> g;
    CMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            M(i, j) = cplx(g(rng), g(rng));
            M(j, i) = M(i, j);
        }
    return M;
}

}  // namespace

CRow random_complex_row(int n, double scale, Rng& rng) {
    std::normal_distribution<double> g;
    CRow z(n);
    for (int i = 0; i < n; ++i) z(i) = scale * cplx(g(rng), g(rng));
    return z;
}

DiskPoint sample_disk_point(int n, double rho, Rng& rng) {
    if (!(rho > 0 && rho < 1)) throw InvalidArgument("radius cap must lie in (0, 1)");
    const CMatrix M = random_symmetric_complex(n, rng);
    return DiskPoint(CMatrix(rho * M / (1.0 + largest_singular_value(M))));
}

DiskPoint sample_disk_point(int n, double rho, std::uint64_t seed) {
    Rng rng(seed);
    return sample_disk_point(n, rho, rng);
}

UpperHalfPoint sample_upper_half_point(int n, Rng& rng) {
    std::normal_distribution<double> g;
    RMatrix X(n, n), S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) X(i, j) = X(j, i) = g(rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = g(rng);
    const RMatrix Y = RMatrix::Identity(n, n) + S * S.transpose();
    CMatrix O(n, n);
    O.real() = X;
    O.imag() = 0.5 * (Y + Y.transpose());
    return UpperHalfPoint(O);
}

UpperHalfPoint sample_upper_half_point(int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_upper_half_point(n, rng);
}

SJDiskPoint sample_sj_disk_point(int n, double rho, double z_cap, Rng& rng) {
    DiskPoint w = sample_disk_point(n, rho, rng);
    // uniform direction, radius with full support on the ball |z| ≤ z_cap
    CRow g = random_complex_row(n, 1.0, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = z_cap * std::pow(u(rng), 1.0 / (2.0 * n));
    const double norm = g.norm();
    CRow z = norm > 0 ? CRow(g * (r / norm)) : CRow(CRow::Zero(n));
    return {w, z};
}

SJDiskPoint sample_sj_disk_point(int n, double rho, double z_cap, std::uint64_t seed) {
    Rng rng(seed);
    return sample_sj_disk_point(n, rho, z_cap, rng);
}

SJSpacePoint sample_sj_space_point(int n, double zeta_scale, Rng& rng) {
    UpperHalfPoint o = sample_upper_half_point(n, rng);
    return {o, random_complex_row(n, zeta_scale, rng)};
}

}  // namespace sjd
