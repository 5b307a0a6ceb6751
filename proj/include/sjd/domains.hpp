#pragma once

#include <cstdint>
#include <random>

#include "sjd/numkit.hpp"

namespace sjd {

using Rng = std::mt19937_64;

// Ω ∈ ℌₙ: symmetric with Im Ω ≻ 0.
class UpperHalfPoint {
public:
    explicit UpperHalfPoint(const CSymMatrix& omega);
    explicit UpperHalfPoint(const CMatrix& omega) : UpperHalfPoint(CSymMatrix::from_full(omega)) {}
    static bool contains(const CMatrix& omega);

    int n() const { return omega_.n(); }
    const CSymMatrix& omega() const { return omega_; }
    CMatrix full() const { return omega_.full(); }
    RMatrix X() const { return full().real(); }
    RMatrix Y() const { return full().imag(); }

private:
    CSymMatrix omega_;
};

// W ∈ 𝔇ₙ: symmetric with I − WW̄ ≻ 0.
class DiskPoint {
public:
    explicit DiskPoint(const CSymMatrix& w);
    explicit DiskPoint(const CMatrix& w) : DiskPoint(CSymMatrix::from_full(w)) {}
    static bool contains(const CMatrix& w);
    static DiskPoint origin(int n) { return DiskPoint(CSymMatrix(n)); }

    int n() const { return w_.n(); }
    const CSymMatrix& w() const { return w_; }
    CMatrix full() const { return w_.full(); }

private:
    CSymMatrix w_;
};

struct SJSpacePoint {
    UpperHalfPoint omega;
    CRow zeta;
    int n() const { return omega.n(); }
};

struct SJDiskPoint {
    DiskPoint w;
    CRow z;
    int n() const { return w.n(); }
    static SJDiskPoint origin(int n) { return {DiskPoint::origin(n), CRow::Zero(n)}; }
};

SJSpacePoint make_space_point(const CMatrix& omega, const CRow& zeta);
SJDiskPoint make_disk_point(const CMatrix& w, const CRow& z);

// Partial Cayley transform 𝔇ₙᴶ → ℌₙᴶ and its inverse.
SJSpacePoint cayley_forward(const SJDiskPoint& x);
SJDiskPoint cayley_inverse(const SJSpacePoint& y);
UpperHalfPoint cayley_forward(const DiskPoint& w);
DiskPoint cayley_inverse(const UpperHalfPoint& omega);

// (W, z) ↦ (−W, z): switches between the chart in which the Cayley map and the
// starred action are written and the chart of the invariant weight A(W, z).
SJDiskPoint reflect(const SJDiskPoint& x);

DiskPoint sample_disk_point(int n, double rho, Rng& rng);
DiskPoint sample_disk_point(int n, double rho, std::uint64_t seed);
UpperHalfPoint sample_upper_half_point(int n, Rng& rng);
UpperHalfPoint sample_upper_half_point(int n, std::uint64_t seed);
SJDiskPoint sample_sj_disk_point(int n, double rho, double z_cap, Rng& rng);
SJDiskPoint sample_sj_disk_point(int n, double rho, double z_cap, std::uint64_t seed);
SJSpacePoint sample_sj_space_point(int n, double zeta_scale, Rng& rng);

CRow random_complex_row(int n, double scale, Rng& rng);

}  // namespace sjd
