#include "sjd/quad.hpp"

#include <chrono>
#include <cmath>

namespace sjd {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// x = (Re z, Im z) ↔ z
CRow z_from_x(int n, const Eigen::VectorXd& x) {
    CRow z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(x(i), x(n + i));
    return z;
}

double disk_gap_det(const CMatrix& W) {
    const auto n = W.rows();
    return (CMatrix::Identity(n, n) - W * W.conjugate()).determinant().real();
}

}  // namespace

// ---- Gaussian forms -------------------------------------------------------

GaussianForm::GaussianForm(int n_, RMatrix Q_) : n(n_), Q(std::move(Q_)) {
    if (Q.rows() != 2 * n || Q.cols() != 2 * n) throw InvalidArgument("GaussianForm: Q must be 2n×2n");
    Q = (0.5 * (Q + Q.transpose())).eval();
    if (!posdef_certificate(Q).positive) throw DomainError("GaussianForm: quadratic form is not positive definite");
}

GaussianForm GaussianForm::from_quadratic(int n, const std::function<double(const CRow&)>& q) {
    RMatrix Q(2 * n, 2 * n);
    std::vector<double> diag(static_cast<size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
        e(i) = 1;
        diag[static_cast<size_t>(i)] = q(z_from_x(n, e));
    }
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) {
            if (i == j) {
                Q(i, i) = diag[static_cast<size_t>(i)];
                continue;
            }
            Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
            e(i) = 1;
            e(j) = 1;
            Q(i, j) = 0.5 * (q(z_from_x(n, e)) - diag[static_cast<size_t>(i)] - diag[static_cast<size_t>(j)]);
        }
    return GaussianForm(n, Q);
}

GaussianForm GaussianForm::from_a_form(const DiskPoint& Wp, double scale) {
    // A(W,z) = z̄Mᵗz + Re(z W̄M ᵗz),  M = (I−WW̄)⁻¹
    const int n = Wp.n();
    const CMatrix W = Wp.full();
    const CMatrix M = inverse(CMatrix(CMatrix::Identity(n, n) - W * W.conjugate()));
    const CMatrix S0 = W.conjugate() * M;
    const CMatrix S = 0.5 * (S0 + S0.transpose());
    const RMatrix Hr = M.real(), Hi = M.imag();
    RMatrix A = Hr + S.real();
    RMatrix C = Hr - S.real();
    RMatrix B = 0.5 * (Hi.transpose() - Hi) - S.imag();
    RMatrix Q(2 * n, 2 * n);
    Q << A, B, B.transpose(), C;
    return GaussianForm(n, scale * Q);
}

double GaussianForm::normalization() const {
    return std::pow(kPi, n) / std::sqrt(Q.determinant());
}

// ---- z z̄ polynomials --------------------------------------------------------

void ZZbarPoly::add(const std::vector<int>& alpha, const std::vector<int>& beta, cplx c) {
    if (c == cplx(0)) return;
    terms[{alpha, beta}] += c;
}

int ZZbarPoly::max_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms) {
        int a = 0, b = 0;
        for (int v : key.first) a += v;
        for (int v : key.second) b += v;
        d = std::max({d, a, b});
    }
    return d;
}

cplx ZZbarPoly::evaluate(const CRow& z) const {
    cplx acc = 0;
    for (const auto& [key, c] : terms) {
        cplx t = c;
        for (int i = 0; i < n; ++i) {
            for (int e = 0; e < key.first[static_cast<size_t>(i)]; ++e) t *= z(i);
            for (int e = 0; e < key.second[static_cast<size_t>(i)]; ++e) t *= std::conj(z(i));
        }
        acc += t;
    }
    return acc;
}

ZZbarPoly zzbar_product(const PolyFunction& f, const PolyFunction& g) {
    if (f.n() != g.n()) throw InvalidArgument("zzbar_product: dimension mismatch");
    if (f.depends_on_w() || g.depends_on_w())
        throw InvalidArgument("zzbar_product: polynomials must not depend on W (substitute W first)");
    ZZbarPoly p;
    p.n = f.n();
    for (const auto& [k1, c1] : f.terms())
        for (const auto& [k2, c2] : g.terms()) p.add(k1.s.s, k2.s.s, c1 * std::conj(c2));
    return p;
}

ComplexGaussianMoments::ComplexGaussianMoments(const GaussianForm& g, int max_degree)
    : n_(g.n), D_(max_degree) {
    const RMatrix S = (2.0 * g.Q).inverse();  // covariance of x
    P_.resize(n_, n_);
    C_.resize(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const double rr = S(i, j), ii = S(n_ + i, n_ + j), ri = S(i, n_ + j), ir = S(n_ + i, j);
            P_(i, j) = cplx(rr - ii, ri + ir);
            C_(i, j) = cplx(rr + ii, ir - ri);
        }
    size_t size = 1;
    for (int i = 0; i < 2 * n_; ++i) size *= static_cast<size_t>(D_ + 1);
    memo_.assign(size, 0.0);
    known_.assign(size, 0);
}

size_t ComplexGaussianMoments::index(const std::vector<int>& alpha, const std::vector<int>& beta) const {
    size_t idx = 0;
    for (int i = 0; i < n_; ++i) idx = idx * static_cast<size_t>(D_ + 1) + static_cast<size_t>(alpha[static_cast<size_t>(i)]);
    for (int i = 0; i < n_; ++i) idx = idx * static_cast<size_t>(D_ + 1) + static_cast<size_t>(beta[static_cast<size_t>(i)]);
    return idx;
}

cplx ComplexGaussianMoments::operator()(const std::vector<int>& alpha, const std::vector<int>& beta) const {
    for (int i = 0; i < n_; ++i)
        if (alpha[static_cast<size_t>(i)] > D_ || beta[static_cast<size_t>(i)] > D_)
            throw InvalidArgument("moment order exceeds the table");
    std::vector<int> a = alpha, b = beta;
    return compute(a, b);
}

cplx ComplexGaussianMoments::compute(std::vector<int>& a, std::vector<int>& b) const {
    int ta = 0, tb = 0;
    for (int v : a) ta += v;
    for (int v : b) tb += v;
    if (ta == 0 && tb == 0) return 1.0;
    if ((ta + tb) % 2) return 0.0;
    const size_t id = index(a, b);
    if (known_[id]) return memo_[id];

    // Isserlis: pair the first factor with every remaining one
    cplx acc = 0;
    if (ta > 0) {
        int i = 0;
        while (a[static_cast<size_t>(i)] == 0) ++i;
        a[static_cast<size_t>(i)] -= 1;
        for (int j = 0; j < n_; ++j) {
            const int cnt = a[static_cast<size_t>(j)];
            if (cnt > 0) {
                a[static_cast<size_t>(j)] -= 1;
                acc += static_cast<double>(cnt) * P_(i, j) * compute(a, b);
                a[static_cast<size_t>(j)] += 1;
            }
        }
        for (int j = 0; j < n_; ++j) {
            const int cnt = b[static_cast<size_t>(j)];
            if (cnt > 0) {
                b[static_cast<size_t>(j)] -= 1;
                acc += static_cast<double>(cnt) * C_(i, j) * compute(a, b);
                b[static_cast<size_t>(j)] += 1;
            }
        }
        a[static_cast<size_t>(i)] += 1;
    } else {
        int i = 0;
        while (b[static_cast<size_t>(i)] == 0) ++i;
        b[static_cast<size_t>(i)] -= 1;
        for (int j = 0; j < n_; ++j) {
            const int cnt = b[static_cast<size_t>(j)];
            if (cnt > 0) {
                b[static_cast<size_t>(j)] -= 1;
                acc += static_cast<double>(cnt) * std::conj(P_(i, j)) * compute(a, b);
                b[static_cast<size_t>(j)] += 1;
            }
        }
        b[static_cast<size_t>(i)] += 1;
    }
    memo_[id] = acc;
    known_[id] = 1;
    return acc;
}

cplx gaussian_moment(const ZZbarPoly& p, const GaussianForm& g) {
    if (p.n != g.n) throw InvalidArgument("gaussian_moment: dimension mismatch");
    ComplexGaussianMoments mom(g, std::max(1, p.max_degree()));
    cplx acc = 0;
    for (const auto& [key, c] : p.terms) acc += c * mom(key.first, key.second);
    return acc * g.normalization();
}

void gauss_hermite_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) T(k, k - 1) = T(k - 1, k) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    nodes.resize(static_cast<size_t>(order));
    weights.resize(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) {
        nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        weights[static_cast<size_t>(i)] = std::sqrt(kPi) * v * v;
    }
}

void gauss_legendre_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) T(k, k - 1) = T(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    nodes.resize(static_cast<size_t>(order));
    weights.resize(static_cast<size_t>(order));
    for (int i = 0; i < order; ++i) {
        nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        weights[static_cast<size_t>(i)] = 2.0 * v * v;
    }
}

cplx gauss_hermite_moment(const ZZbarPoly& p, const GaussianForm& g, int order) {
    const int dim = 2 * g.n;
    std::vector<double> x, w;
    gauss_hermite_rule(order, x, w);
    // xᵀQx = |u|² with u = Lᵀx
    const Eigen::LLT<RMatrix> llt(g.Q);
    const RMatrix Lt = llt.matrixU();
    const RMatrix Ltinv = Lt.inverse();
    const double jac = 1.0 / Lt.diagonal().prod();

    std::vector<int> idx(static_cast<size_t>(dim), 0);
    Eigen::VectorXd u(dim);
    cplx acc = 0;
    while (true) {
        double wt = 1;
        for (int d = 0; d < dim; ++d) {
            u(d) = x[static_cast<size_t>(idx[static_cast<size_t>(d)])];
            wt *= w[static_cast<size_t>(idx[static_cast<size_t>(d)])];
        }
        acc += wt * p.evaluate(z_from_x(g.n, Ltinv * u));
        int d = 0;
        while (d < dim && ++idx[static_cast<size_t>(d)] == order) idx[static_cast<size_t>(d++)] = 0;
        if (d == dim) break;
    }
    return acc * jac;
}

cplx bargmann_moment(const MultiIndex& s, const MultiIndex& r) {
    const int n = s.n();
    ZZbarPoly p;
    p.n = n;
    p.add(s.s, r.s, 1.0);
    return gaussian_moment(p, GaussianForm::standard(n)) / std::pow(kPi, n);
}

namespace {

double matrix_gaussian_exponent(const CMatrix& W, const CRow& Z) {
    // |Z|² + ½(ZW̄ᵗZ + Z̄WᵗZ̄) = |Z|² + Re(ZW̄ᵗZ)
    return Z.squaredNorm() + (Z * W.conjugate() * Z.transpose())(0, 0).real();
}

}  // namespace

cplx matrix_gaussian_integral(const DiskPoint& W) {
    const CMatrix Wf = W.full();
    const GaussianForm g = GaussianForm::from_quadratic(W.n(), [&](const CRow& Z) { return matrix_gaussian_exponent(Wf, Z); });
    return g.normalization();
}

cplx matrix_gaussian_closed_form(const DiskPoint& W) {
    const int n = W.n();
    return std::pow(kPi, n) / std::sqrt(disk_gap_det(W.full()));
}

cplx matrix_gaussian_box_quadrature(const DiskPoint& W, int order, double half_width) {
    if (W.n() != 1) throw InvalidArgument("matrix_gaussian_box_quadrature: n = 1 only");
    std::vector<double> x, w;
    gauss_legendre_rule(order, x, w);
    const CMatrix Wf = W.full();
    double acc = 0;
    CRow Z(1);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            Z(0) = cplx(half_width * x[static_cast<size_t>(i)], half_width * x[static_cast<size_t>(j)]);
            acc += w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)] * std::exp(-matrix_gaussian_exponent(Wf, Z));
        }
    return acc * half_width * half_width;
}

double verify_h9(const SJDiskPoint& xp, const SJDiskPoint& x, int trunc) {
    const int n = x.n();
    ZZbarPoly p;
    p.n = n;
    const auto idx = enumerate_multiindices(n, trunc);
    std::vector<cplx> a, b;
    for (const MultiIndex& s : idx) {
        const PolyFunction P = p_s(s);
        a.push_back(P(xp) / s.factorial());
        b.push_back(P(x) / s.factorial());
    }
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) p.add(idx[i].s, idx[j].s, a[i] * std::conj(b[j]));
    const cplx lhs = gaussian_moment(p, GaussianForm::standard(n)) / std::pow(kPi, n);
    const CMatrix G = CMatrix::Identity(n, n) - xp.w.full() * x.w.full().conjugate();
    const cplx rhs = det_power(G, -0.5) * std::exp(a_polar(xp, x));
    return std::abs(lhs - rhs);
}

cplx fock_inner(const PolyFunction& f, const PolyFunction& g, const DiskPoint& W, double m, FockNormalization norm) {
    if (!(m > 0)) throw InvalidArgument("index m must be positive");
    const int n = W.n();
    const double pref = norm == FockNormalization::Nominal ? std::pow(2.0 * kPi * m, n) : calibrate_norms(n, m).calibrated;
    const GaussianForm gf = GaussianForm::from_a_form(W, 8.0 * kPi * m);
    const cplx integral = gaussian_moment(zzbar_product(f, g), gf) / std::pow(kPi, n);
    return pref / std::sqrt(disk_gap_det(W.full())) * integral;
}

Calibration calibrate_norms(int n, double m) {
    if (!(m > 0)) throw InvalidArgument("index m must be positive");
    const GaussianForm g = GaussianForm::from_a_form(DiskPoint::origin(n), 8.0 * kPi * m);
    const double mass = g.normalization() / std::pow(kPi, n);
    Calibration c{n, m, std::pow(2.0 * kPi * m, n), 1.0 / mass, 0};
    c.ratio = c.calibrated / c.nominal;
    return c;
}

// ---- Monte Carlo ------------------------------------------------------------

namespace {

struct Accumulator {
    std::vector<cplx> sum;
    std::vector<double> sumsq;
    std::size_t count = 0;

    explicit Accumulator(size_t k) : sum(k, 0.0), sumsq(k, 0.0) {}
    void add(const std::vector<cplx>& v) {
        for (size_t i = 0; i < v.size(); ++i) {
            sum[i] += v[i];
            sumsq[i] += std::norm(v[i]);
        }
        ++count;
    }
    void merge(const Accumulator& o) {
        for (size_t i = 0; i < sum.size(); ++i) {
            sum[i] += o.sum[i];
            sumsq[i] += o.sumsq[i];
        }
        count += o.count;
    }
    cplx mean(size_t i) const { return sum[i] / static_cast<double>(count); }
    double sigma(size_t i) const {
        const double N = static_cast<double>(count);
        const double var = std::max(0.0, sumsq[i] / N - std::norm(mean(i)));
        return std::sqrt(var / N);
    }
};

// Uniform on the polydisk of upper-triangle entries; reports whether the draw lies in 𝔇ₙ.
bool draw_disk(int n, Rng& rng, CMatrix& W) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    W.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double r = std::sqrt(u(rng));
            const double t = 2 * kPi * u(rng);
            W(i, j) = W(j, i) = std::polar(r, t);
        }
    if (n == 1) return std::abs(W(0, 0)) < 1.0 - 1e-12;
    return DiskPoint::contains(W);
}

// W = U·diag(√t)·Uᵀ with U Haar on U(n) and t_i iid Beta(1, β+1), β = k − n − 3/2. In these
// coordinates dW ∝ ∏_{i<j}|t_i − t_j| dt dU, so the weight returned by draw() satisfies
// E[g(W)·w] = ∫ g(W) det(I−WW̄)^β dW and is bounded (no heavy tail when β < 0).
// The constant comes from the Berezin constant and Selberg's integral.
struct TakagiProposal {
    int n;
    double beta;
    double scale;

    TakagiProposal(int n_, double k) : n(n_), beta(k - n_ - 1.5) {
        const double b = beta + 1, g = 0.5;
        double lg = n * std::log(b);  // E∏|t_i − t_j| = bⁿ·S_n(1, b, ½)
        for (int j = 0; j < n; ++j)
            lg += std::lgamma(1 + j * g) + std::lgamma(b + j * g) + std::lgamma(1 + (j + 1) * g) -
                  std::lgamma(1 + b + (n + j - 1) * g) - std::lgamma(1 + g);
        scale = 1.0 / (berezin_constant(n, k) * std::exp(lg));
    }

    // returns the weight; gap = det(I − WW̄). Draws within 1e−10 of the boundary get weight 0: the
    // domain certificates reject them, and their probability ((1e−10)^{β+1} per eigenvalue) is far below MC noise.
    double draw(Rng& rng, CMatrix& W, double& gap) const {
        std::normal_distribution<double> nd;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        CMatrix U(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) U(i, j) = cplx(nd(rng), nd(rng));
        if (n > 1) {
            Eigen::HouseholderQR<CMatrix> qr(U);
            CMatrix Q = qr.householderQ();
            const CMatrix& R = qr.matrixQR();
            for (int j = 0; j < n; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
            U = Q;
        } else {
            U(0, 0) /= std::abs(U(0, 0));
        }
        Eigen::VectorXd t(n);
        gap = 1;
        for (int i = 0; i < n; ++i) {
            const double v = 1.0 - u(rng);  // (0, 1]
            const double one_minus_t = std::pow(v, 1.0 / (beta + 1));
            t(i) = 1.0 - one_minus_t;
            gap *= one_minus_t;
        }
        if (t.maxCoeff() > 1.0 - 1e-10) return 0.0;
        W = U * t.cwiseSqrt().cast<cplx>().asDiagonal() * U.transpose();
        double vd = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) vd *= std::abs(t(i) - t(j));
        return scale * vd;
    }
};

// Per-batch substreams; reduction in batch order so results do not depend on scheduling.
template <class Body>
Accumulator run_batches(const MCConfig& cfg, size_t width, Body body) {
    if (cfg.samples < 1) throw InvalidArgument("Monte Carlo needs at least one sample");
    const std::size_t batch = std::max<std::size_t>(1, cfg.batch);
    Accumulator total(width);
    std::vector<cplx> v(width);
    for (std::size_t start = 0, b = 0; start < cfg.samples; start += batch, ++b) {
        std::seed_seq sq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                         static_cast<std::uint32_t>(b), 0x5eedu};
        Rng rng(sq);
        Accumulator part(width);
        const std::size_t end = std::min(cfg.samples, start + batch);
        for (std::size_t i = start; i < end; ++i) {
            std::fill(v.begin(), v.end(), cplx(0));
            body(rng, v);
            part.add(v);
        }
        total.merge(part);
    }
    return total;
}

GramEstimate to_gram(const Accumulator& acc, size_t nb, const MCConfig& cfg, double t0) {
    GramEstimate g{CMatrix(nb, nb), RMatrix(nb, nb), acc.count, cfg.seed, now_seconds() - t0};
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j) {
            g.mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc.mean(i * nb + j);
            g.sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc.sigma(i * nb + j);
        }
    return g;
}

void require_weight(int n, double k) {
    if (!(k > n + 0.5)) {
        std::ostringstream os;
        os << "weight must satisfy k > n + 1/2 (got k = " << k << ", n = " << n << ")";
        throw InvalidArgument(os.str());
    }
}

}  // namespace

GramEstimate mc_disk_gram(const std::vector<PolyFunction>& basis, int n, double k, const MCConfig& cfg) {
    require_weight(n, k);
    const double t0 = now_seconds();
    const size_t nb = basis.size();
    const TakagiProposal prop(n, k);
    const CRow z0 = CRow::Zero(n);
    CMatrix W;
    double gap = 0;
    std::vector<cplx> vals(nb);
    Accumulator acc = run_batches(cfg, nb * nb, [&](Rng& rng, std::vector<cplx>& out) {
        const double wt = prop.draw(rng, W, gap);
        if (wt == 0.0) return;
        const CSymMatrix Ws = CSymMatrix::from_full(W);
        for (size_t i = 0; i < nb; ++i) vals[i] = basis[i].evaluate(z0, Ws);
        for (size_t i = 0; i < nb; ++i)
            for (size_t j = 0; j < nb; ++j) out[i * nb + j] = wt * vals[i] * std::conj(vals[j]);
    });
    return to_gram(acc, nb, cfg, t0);
}

MCEstimate mc_disk_inner(const PolyFunction& F, const PolyFunction& G, int n, double k, const MCConfig& cfg) {
    const GramEstimate g = mc_disk_gram({F, G}, n, k, cfg);
    return {g.mean(0, 1), g.sigma(0, 1), g.samples, g.seed, g.elapsed};
}

GramEstimate mc_dj_gram(const std::vector<PolyFunction>& basis, int n, double m, double k, const MCConfig& cfg,
                        double c_star) {
    require_weight(n, k);
    if (!(m > 0)) throw InvalidArgument("index m must be positive");
    const double t0 = now_seconds();
    const size_t nb = basis.size();
    int D = 0;
    for (const auto& p : basis) D = std::max(D, p.max_z_degree());
    const auto zmono = enumerate_multiindices(n, D);
    std::map<MultiIndex, size_t> zpos;
    for (size_t i = 0; i < zmono.size(); ++i) zpos[zmono[i]] = i;
    const size_t nz = zmono.size();

    const double pref = c_star * std::pow(kPi, -n);  // C★ · π^{−n}
    const TakagiProposal prop(n, k);
    CMatrix W;
    double gap = 0;
    CMatrix coef(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nz));
    CMatrix mom(static_cast<Eigen::Index>(nz), static_cast<Eigen::Index>(nz));
    Accumulator acc = run_batches(cfg, nb * nb, [&](Rng& rng, std::vector<cplx>& out) {
        const double wq = prop.draw(rng, W, gap);  // det^β / proposal density
        if (wq == 0.0) return;
        const DiskPoint Wp(W);
        const GaussianForm g = GaussianForm::from_a_form(Wp, 8.0 * kPi * m);
        const ComplexGaussianMoments E(g, std::max(1, D));
        for (size_t u = 0; u < nz; ++u)
            for (size_t v = 0; v < nz; ++v)
                mom(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = E(zmono[u].s, zmono[v].s);
        coef.setZero();
        for (size_t i = 0; i < nb; ++i)
            for (const auto& [key, c] : basis[i].terms())
                coef(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(zpos.at(key.s))) += c * monomial(Wp.w(), key.a);
        // ∫ e^{−8πmA} d²ⁿz · det(I−WW̄)^{k} · det(I−WW̄)^{−n−2}
        const double wt = pref * g.normalization() / kmk_star_weight({Wp, CRow::Zero(n)}, m, k) *
                          std::pow(gap, -n - 2.0) * wq / std::pow(gap, prop.beta);
        const CMatrix G = coef * mom * coef.adjoint();
        for (size_t i = 0; i < nb; ++i)
            for (size_t j = 0; j < nb; ++j)
                out[i * nb + j] = wt * G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });
    return to_gram(acc, nb, cfg, t0);
}

MCEstimate mc_dj_inner(const PolyFunction& f, const PolyFunction& g, int n, double m, double k, const MCConfig& cfg,
                       double c_star) {
    const GramEstimate G = mc_dj_gram({f, g}, n, m, k, cfg, c_star);
    return {G.mean(0, 1), G.sigma(0, 1), G.samples, G.seed, G.elapsed};
}

namespace {

// (W, z) drawn from the disk proposal: W uniform on the polydisk, z | W ∝ exp(−8πm A(W,z)).
// Returns the proposal density, or 0 for a rejected W.
double draw_disk_jacobi(int n, double m, Rng& rng, CMatrix& W, CRow& z) {
    if (!draw_disk(n, rng, W)) return 0.0;
    const DiskPoint Wp(W);
    const GaussianForm g = GaussianForm::from_a_form(Wp, 8.0 * kPi * m);
    const RMatrix cov = (2.0 * g.Q).inverse();
    const RMatrix L = cov.llt().matrixL();
    std::normal_distribution<double> nd;
    Eigen::VectorXd e(2 * n);
    for (int i = 0; i < 2 * n; ++i) e(i) = nd(rng);
    const Eigen::VectorXd x = L * e;
    z = z_from_x(n, x);
    const double d = n * (n + 1) / 2.0;
    return std::pow(kPi, -d) * std::exp(-x.dot(g.Q * x)) / g.normalization();
}

}  // namespace

MCEstimate mc_dj_inner_sampled(const DiskFn& f, const DiskFn& g, int n, double m, double k, const MCConfig& cfg,
                               double c_star) {
    require_weight(n, k);
    const double t0 = now_seconds();
    CMatrix W;
    CRow z;
    Accumulator acc = run_batches(cfg, 1, [&](Rng& rng, std::vector<cplx>& out) {
        const double q = draw_disk_jacobi(n, m, rng, W, z);
        if (q == 0.0) return;
        const SJDiskPoint x{DiskPoint(W), z};
        const double dens = c_star * std::pow(kPi, -n) / kmk_star_weight(x, m, k) * std::pow(disk_gap_det(W), -n - 2.0);
        out[0] = f(x) * std::conj(g(x)) * (dens / q);
    });
    return {acc.mean(0), acc.sigma(0), acc.count, cfg.seed, now_seconds() - t0};
}

MCEstimate mc_hj_inner(const SpaceFn& f, const SpaceFn& g, int n, double m, double k, const MCConfig& cfg,
                       double c_const) {
    require_weight(n, k);
    const double t0 = now_seconds();
    CMatrix W;
    CRow z;
    Accumulator acc = run_batches(cfg, 1, [&](Rng& rng, std::vector<cplx>& out) {
        const double q = draw_disk_jacobi(n, m, rng, W, z);
        if (q == 0.0) return;
        const SJDiskPoint xc = reflect({DiskPoint(W), z});
        const SJSpacePoint y = cayley_forward(xc);
        const double detY = y.omega.Y().determinant();
        const double dens = c_const / kmk_weight(y, m, k) * std::pow(detY, -n - 2.0);
        out[0] = f(y) * std::conj(g(y)) * (dens * cayley_jacobian(xc) / q);
    });
    return {acc.mean(0), acc.sigma(0), acc.count, cfg.seed, now_seconds() - t0};
}

// ---- finite differences -----------------------------------------------------

Eigen::MatrixXd finite_difference_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double h) {
    const Eigen::VectorXd f0 = f(x);
    Eigen::MatrixXd J(f0.size(), x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp(j) += h;
        xm(j) -= h;
        J.col(j) = (f(xp) - f(xm)) / (2 * h);
    }
    return J;
}

Eigen::VectorXd real_coordinates(const SJDiskPoint& x) {
    const int n = x.n();
    const int d = n * (n + 1) / 2;
    Eigen::VectorXd v(2 * d + 2 * n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            v(p) = x.w.w()(i, j).real();
            v(d + p) = x.w.w()(i, j).imag();
            ++p;
        }
    for (int i = 0; i < n; ++i) {
        v(2 * d + i) = x.z(i).real();
        v(2 * d + n + i) = x.z(i).imag();
    }
    return v;
}

Eigen::VectorXd real_coordinates(const SJSpacePoint& y) {
    const int n = y.n();
    const int d = n * (n + 1) / 2;
    Eigen::VectorXd v(2 * d + 2 * n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            v(p) = y.omega.omega()(i, j).real();
            v(d + p) = y.omega.omega()(i, j).imag();
            ++p;
        }
    for (int i = 0; i < n; ++i) {
        v(2 * d + i) = y.zeta(i).real();
        v(2 * d + n + i) = y.zeta(i).imag();
    }
    return v;
}

SJDiskPoint disk_point_from_real(int n, const Eigen::VectorXd& v) {
    const int d = n * (n + 1) / 2;
    CSymMatrix W(n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            W(i, j) = cplx(v(p), v(d + p));
            ++p;
        }
    CRow z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(v(2 * d + i), v(2 * d + n + i));
    return {DiskPoint(W), z};
}

double cayley_jacobian(const SJDiskPoint& x) {
    const int n = x.n();
    const CMatrix ImW = CMatrix::Identity(n, n) - x.w.full();
    return std::pow(2.0, n * (n + 3)) * std::pow(std::abs(ImW.determinant()), -2.0 * (n + 2));
}

double cayley_jacobian_fd(const SJDiskPoint& x, double h) {
    const int n = x.n();
    auto f = [n](const Eigen::VectorXd& v) { return real_coordinates(cayley_forward(disk_point_from_real(n, v))); };
    return std::abs(finite_difference_jacobian(f, real_coordinates(x), h).determinant());
}

}  // namespace sjd
