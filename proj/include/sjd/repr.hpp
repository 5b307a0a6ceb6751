#pragma once

#include "sjd/quad.hpp"
#include "sjd/report.hpp"

namespace sjd {

struct ReprParams {
    int n = 1;
    double m = 0.25;
    double k = 3;
    double c_star = 1.0;

    void validate() const;  // m > 0, k > n + 1/2
    // Constant of the ℌₙᴶ inner product making T★ isometric: C★·π^{−n}·2^{−n(n+3)}.
    double c_space() const;
};

enum class Provenance { Basis, Transported, Composite };

struct DiskFunction {
    DiskFn f;
    Provenance tag = Provenance::Basis;
    cplx operator()(const SJDiskPoint& x) const { return f(x); }
};

struct SpaceFunction {
    SpaceFn f;
    Provenance tag = Provenance::Basis;
    cplx operator()(const SJSpacePoint& y) const { return f(y); }
};

DiskFunction disk_function(const PolyFunction& p);
DiskFunction operator+(const DiskFunction& a, const DiskFunction& b);
DiskFunction operator*(cplx c, const DiskFunction& a);

// x ↦ J★(g★, x)·ψ(g★x) in the chart of the invariant weight.
DiskFunction pi_star_apply(const JacobiStarElement& gs, const DiskFunction& psi, const ReprParams& p);
// y ↦ 𝒥(g, y)·φ(gy)
SpaceFunction pi_apply(const JacobiElement& g, const SpaceFunction& phi, const ReprParams& p);

// (W_c, z) = φ⁻¹(Ω, ζ);  value ψ(−W_c, z)·det(I−W_c)^k·exp(4πm z(I−W_c)⁻¹ᵗz)
SpaceFunction t_star(const DiskFunction& psi, const ReprParams& p);
// (Ω, ζ) = φ((−W, z));  value φ(Ω,ζ)·det((I−iΩ)/2)^k·exp(2πm ζ(I−iΩ)⁻¹ᵗζ)
DiskFunction t_inv(const SpaceFunction& phi, const ReprParams& p);
// Same with det(I−iΩ)^k, i.e. without the ½ (off by 2^{nk}).
DiskFunction t_inv_unscaled(const SpaceFunction& phi, const ReprParams& p);

VerifyReport verify_identities(const ReprParams& p, int count, std::uint64_t seed);
VerifyReport verify_jacobian_constant(const ReprParams& p, int count, std::uint64_t seed);

struct GramResult {
    std::vector<std::pair<MultiIndex, SymIndex>> labels;
    GramEstimate gram;
};
GramResult gram_matrix(const ReprParams& p, int max_s, int max_a, const MCConfig& cfg);
VerifyReport verify_gram(const ReprParams& p, int max_s, int max_a, const MCConfig& cfg);

VerifyReport verify_isometry(const ReprParams& p, const MCConfig& cfg);
VerifyReport reproducing_check(const ReprParams& p, const TruncationSpec& trunc, int points, const MCConfig& cfg);
VerifyReport verify_intertwining(const ReprParams& p, int count, std::uint64_t seed);
VerifyReport verify_kernel_invariance(const ReprParams& p, int count, std::uint64_t seed);

}  // namespace sjd
