#include "sjd/fockpoly.hpp"

#include <cmath>
#include <cstdint>

#include <boost/rational.hpp>

namespace sjd {

// ---- PolyFunction ---------------------------------------------------------

PolyFunction PolyFunction::constant(int n, cplx c) {
    PolyFunction p(n);
    p.add_term(MultiIndex::zero(n), SymIndex(n), c);
    return p;
}

PolyFunction PolyFunction::monomial(const MultiIndex& s, const SymIndex& a, cplx c) {
    if (s.n() != a.n()) throw InvalidArgument("monomial: dimension mismatch");
    PolyFunction p(s.n());
    p.add_term(s, a, c);
    return p;
}

PolyFunction PolyFunction::z_monomial(const MultiIndex& s, cplx c) { return monomial(s, SymIndex(s.n()), c); }

PolyFunction PolyFunction::w_monomial(const SymIndex& a, cplx c) {
    return monomial(MultiIndex::zero(a.n()), a, c);
}

cplx PolyFunction::coefficient(const MultiIndex& s, const SymIndex& a) const {
    auto it = terms_.find({s, a});
    return it == terms_.end() ? cplx(0) : it->second;
}

void PolyFunction::add_term(const MultiIndex& s, const SymIndex& a, cplx c) {
    if (s.n() != n_ || a.n() != n_) throw InvalidArgument("PolyFunction: term dimension mismatch");
    if (c == cplx(0)) return;
    auto [it, inserted] = terms_.try_emplace({s, a}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0)) terms_.erase(it);
    }
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o) {
    if (o.n_ != n_) throw InvalidArgument("PolyFunction: dimension mismatch");
    for (const auto& [key, c] : o.terms_) add_term(key.s, key.a, c);
    return *this;
}

PolyFunction PolyFunction::operator+(const PolyFunction& o) const {
    PolyFunction r = *this;
    r += o;
    return r;
}

PolyFunction PolyFunction::operator-(const PolyFunction& o) const { return *this + o * cplx(-1); }

PolyFunction PolyFunction::operator*(cplx c) const {
    PolyFunction r(n_);
    if (c == cplx(0)) return r;
    for (const auto& [key, v] : terms_) r.add_term(key.s, key.a, v * c);
    return r;
}

PolyFunction PolyFunction::operator*(const PolyFunction& o) const {
    if (o.n_ != n_) throw InvalidArgument("PolyFunction: dimension mismatch");
    PolyFunction r(n_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            MultiIndex s = k1.s;
            for (int i = 0; i < n_; ++i) s.s[i] += k2.s[i];
            SymIndex a = k1.a;
            for (size_t i = 0; i < a.a.size(); ++i) a.a[i] += k2.a.a[i];
            r.add_term(s, a, c1 * c2);
        }
    return r;
}

cplx PolyFunction::evaluate(const CRow& z, const CSymMatrix& W) const {
    if (z.size() != n_ || W.n() != n_) throw InvalidArgument("PolyFunction::evaluate: dimension mismatch");
    cplx acc = 0;
    for (const auto& [key, c] : terms_) acc += c * sjd::monomial(z, key.s) * sjd::monomial(W, key.a);
    return acc;
}

PolyFunction PolyFunction::derivative_z(int j) const {
    PolyFunction r(n_);
    for (const auto& [key, c] : terms_) {
        const int e = key.s[j];
        if (e == 0) continue;
        MultiIndex s = key.s;
        s.s[j] -= 1;
        r.add_term(s, key.a, c * static_cast<double>(e));
    }
    return r;
}

PolyFunction PolyFunction::derivative_w(int i, int j) const {
    PolyFunction r(n_);
    for (const auto& [key, c] : terms_) {
        const int e = key.a(i, j);
        if (e == 0) continue;
        SymIndex a = key.a;
        a.at(i, j) -= 1;
        r.add_term(key.s, a, c * static_cast<double>(e));
    }
    return r;
}

PolyFunction PolyFunction::substitute_w(const CSymMatrix& W) const {
    PolyFunction r(n_);
    const SymIndex zero(n_);
    for (const auto& [key, c] : terms_) r.add_term(key.s, zero, c * sjd::monomial(W, key.a));
    return r;
}

PolyFunction PolyFunction::scale_z(cplx c) const {
    PolyFunction r(n_);
    for (const auto& [key, v] : terms_) r.add_term(key.s, key.a, v * std::pow(c, key.s.total()));
    return r;
}

PolyFunction PolyFunction::conjugate_coefficients() const {
    PolyFunction r(n_);
    for (const auto& [key, v] : terms_) r.add_term(key.s, key.a, std::conj(v));
    return r;
}

int PolyFunction::max_z_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.s.total());
    return d;
}

int PolyFunction::max_w_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.a.degree());
    return d;
}

bool PolyFunction::depends_on_w() const {
    for (const auto& [key, c] : terms_)
        if (!key.a.is_zero()) return true;
    return false;
}

bool PolyFunction::depends_on_z() const {
    for (const auto& [key, c] : terms_)
        if (key.s.total() > 0) return true;
    return false;
}

double PolyFunction::max_abs_coefficient() const {
    double m = 0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

double coefficient_distance(const PolyFunction& a, const PolyFunction& b) { return (a - b).max_abs_coefficient(); }

// ---- P_s ------------------------------------------------------------------

PolyFunction p_s(const MultiIndex& s) {
    const int n = s.n();
    PolyFunction p(n);
    int max_w = 0;
    for (int v : s.s) max_w = std::max(max_w, v);
    const std::int64_t sfact = s.factorial_exact();
    for (const SymIndex& a : enumerate_symindices(n, max_w)) {
        const MultiIndex w = a.weight();
        if (!w.leq(s)) continue;
        MultiIndex t = s;
        for (int i = 0; i < n; ++i) t.s[i] -= w[i];
        // s!/(s−w)! is a product of falling factorials; the quotient by a!·2^â is a matching count
        const std::int64_t num = sfact / t.factorial_exact();
        const std::int64_t den = a.factorial_exact() << a.hat();
        const double coef = (num % den == 0) ? static_cast<double>(num / den)
                                             : static_cast<double>(num) / static_cast<double>(den);
        p.add_term(t, a, coef);
    }
    return p;
}

namespace {

using Rat = boost::rational<std::int64_t>;

struct GenKey {
    std::vector<int> u, z, a;
    auto operator<=>(const GenKey&) const = default;
};
using GenPoly = std::map<GenKey, Rat>;

void gen_add(GenPoly& p, const GenKey& k, const Rat& c) {
    if (c.numerator() == 0) return;
    auto [it, ins] = p.try_emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second.numerator() == 0) p.erase(it);
    }
}

}  // namespace

PolyFunction p_s_from_generating(const MultiIndex& s) {
    const int n = s.n();
    const int len = n * (n + 1) / 2;
    const int total = s.total();
    auto pos = [n](int i, int j) { return i * n - i * (i - 1) / 2 + (j - i); };

    // X = UᵗZ + ½UWᵗU = Σ U_i Z_i + Σ_i ½W_ii U_i² + Σ_{i<j} W_ij U_i U_j
    GenPoly X;
    for (int i = 0; i < n; ++i) {
        GenKey k{std::vector<int>(n, 0), std::vector<int>(n, 0), std::vector<int>(len, 0)};
        k.u[i] = 1;
        k.z[i] = 1;
        gen_add(X, k, Rat(1));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            GenKey k{std::vector<int>(n, 0), std::vector<int>(n, 0), std::vector<int>(len, 0)};
            k.u[i] += 1;
            k.u[j] += 1;
            k.a[pos(i, j)] = 1;
            gen_add(X, k, i == j ? Rat(1, 2) : Rat(1));
        }

    auto within = [&](const std::vector<int>& u) {
        for (int i = 0; i < n; ++i)
            if (u[i] > s[i]) return false;
        return true;
    };

    // exp(X) truncated: T_j = T_{j−1}·X/j, discarding U-exponents that overshoot s
    GenPoly term;
    gen_add(term, {std::vector<int>(n, 0), std::vector<int>(n, 0), std::vector<int>(len, 0)}, Rat(1));
    GenPoly sum = term;
    for (int j = 1; j <= total; ++j) {
        GenPoly next;
        for (const auto& [k1, c1] : term)
            for (const auto& [k2, c2] : X) {
                GenKey k = k1;
                for (int i = 0; i < n; ++i) {
                    k.u[i] += k2.u[i];
                    k.z[i] += k2.z[i];
                }
                for (int i = 0; i < len; ++i) k.a[i] += k2.a[i];
                if (!within(k.u)) continue;
                gen_add(next, k, c1 * c2 / Rat(j));
            }
        term = std::move(next);
        for (const auto& [k, c] : term) gen_add(sum, k, c);
    }

    PolyFunction p(n);
    const Rat sf(s.factorial_exact());
    for (const auto& [k, c] : sum) {
        if (k.u != s.s) continue;
        const Rat v = c * sf;
        p.add_term(MultiIndex(k.z), SymIndex(n, k.a),
                   static_cast<double>(v.numerator()) / static_cast<double>(v.denominator()));
    }
    return p;
}

PolyFunction basis_phi(const DiskPoint& W, const MultiIndex& s, double m) {
    return basis_f(s, m).substitute_w(W.w());
}

PolyFunction basis_f(const MultiIndex& s, double m) {
    if (!(m > 0)) throw InvalidArgument("index m must be positive");
    return p_s(s).scale_z(fock_scale(m)) * cplx(1.0 / std::sqrt(s.factorial()));
}

// ---- Q-basis --------------------------------------------------------------

const PolyFunction& QBasis::operator[](const SymIndex& a) const {
    auto p = position(a);
    if (!p) throw InvalidArgument("Q-basis: index outside the computed range");
    return q[*p];
}

std::optional<size_t> QBasis::position(const SymIndex& a) const {
    for (size_t i = 0; i < index.size(); ++i)
        if (index[i] == a) return i;
    return std::nullopt;
}

double berezin_constant(int n, double k) {
    if (!(k > n + 0.5)) throw InvalidArgument("weight must satisfy k > n + 1/2");
    const double lam = k - 0.5;
    const int d = n * (n + 1) / 2;
    double logc = 0.5 * n * (n - 1) * std::log(2.0) - d * std::log(kPi);
    for (int j = 1; j <= n; ++j) {
        const double shift = 0.5 * (j - 1);
        logc += std::lgamma(lam - shift) - std::lgamma(lam - 0.5 * (n + 1) - shift);
    }
    return std::exp(logc);
}

PolyFunction basis_F(const MultiIndex& s, const SymIndex& a, double m, const QBasis& Q, double c_star) {
    if (!(c_star > 0)) throw InvalidArgument("C★ must be positive");
    const int n = s.n();
    const double pref = std::sqrt(std::pow(8.0 * kPi * m, n) / c_star);
    return basis_f(s, m) * Q[a] * cplx(pref);
}

// ---- expansions -----------------------------------------------------------

Expansion expansion_from_string(const std::string& s) {
    if (s == "h11") return Expansion::H11;
    if (s == "h27") return Expansion::H27;
    if (s == "h35") return Expansion::H35;
    if (s == "fock4.26" || s == "4.26" || s == "fock426") return Expansion::Fock426;
    throw InvalidArgument("unknown expansion '" + s + "'");
}

std::string to_string(Expansion e) {
    switch (e) {
        case Expansion::H11: return "h11";
        case Expansion::H27: return "h27";
        case Expansion::H35: return "h35";
        case Expansion::Fock426: return "fock4.26";
    }
    return "?";
}

cplx expansion_closed_form(const SJDiskPoint& xp, const SJDiskPoint& x, Expansion which, const ExpansionParams& p) {
    const int n = x.n();
    const CMatrix I = CMatrix::Identity(n, n);
    const double c8 = 8.0 * kPi * p.m;
    switch (which) {
        case Expansion::H11:
            return det_power(CMatrix(I - xp.w.full() * x.w.full().conjugate()), -0.5) * std::exp(a_polar(xp, x));
        case Expansion::H27: {
            const SJDiskPoint y{x.w, xp.z};
            return det_power(CMatrix(I - x.w.full() * x.w.full().conjugate()), -0.5) * std::exp(c8 * a_polar(y, x));
        }
        case Expansion::H35:
            return det_power(CMatrix(I - xp.w.full() * x.w.full().conjugate()), -0.5) *
                   std::exp(c8 * a_polar(xp, x));
        case Expansion::Fock426:
            return std::pow(c8, n) * berezin_constant(n, p.k) / p.c_star * kmk_star_kernel(xp, x, p.m, p.k);
    }
    return 0;
}

ExpansionResult kernel_expansion_truncated(const SJDiskPoint& xp, const SJDiskPoint& x, Expansion which,
                                           const TruncationSpec& trunc, const ExpansionParams& p) {
    const int n = x.n();
    const int N = trunc.max_degree;
    std::vector<cplx> grade(static_cast<size_t>(N + 1), 0.0);

    const auto multi = enumerate_multiindices(n, N);
    if (which == Expansion::Fock426) {
        if (!p.q) throw InvalidArgument("fock4.26 expansion needs a Q-basis");
        const int Na = trunc.max_a_degree < 0 ? N : trunc.max_a_degree;
        const double pref = std::pow(8.0 * kPi * p.m, n) / p.c_star;
        for (const MultiIndex& s : multi) {
            const PolyFunction f = basis_f(s, p.m);
            const cplx fs = f(xp) * std::conj(f(x));
            for (size_t i = 0; i < p.q->index.size(); ++i) {
                const int da = p.q->index[i].degree();
                if (da > Na) continue;
                const cplx qq = p.q->q[i](xp) * std::conj(p.q->q[i](x));
                grade[static_cast<size_t>(std::max(s.total(), da))] += pref * fs * qq;
            }
        }
    } else {
        for (const MultiIndex& s : multi) {
            cplx term;
            if (which == Expansion::H11) {
                const PolyFunction P = p_s(s);
                term = P(xp) * std::conj(P(x)) / s.factorial();
            } else if (which == Expansion::H27) {
                const PolyFunction phi = basis_phi(x.w, s, p.m);
                term = phi.evaluate(xp.z, x.w.w()) * std::conj(phi.evaluate(x.z, x.w.w()));
            } else {
                const PolyFunction f = basis_f(s, p.m);
                term = f(xp) * std::conj(f(x));
            }
            grade[static_cast<size_t>(s.total())] += term;
        }
    }

    ExpansionResult r;
    cplx acc = 0;
    for (const cplx& g : grade) {
        acc += g;
        r.partial_by_degree.push_back(acc);
    }
    r.partial_sum = acc;
    r.closed_form = expansion_closed_form(xp, x, which, p);

    // tail from the last two non-negligible grade contributions
    std::vector<std::pair<int, double>> nz;
    for (int d = 0; d <= N; ++d)
        if (std::abs(grade[static_cast<size_t>(d)]) > 0) nz.emplace_back(d, std::abs(grade[static_cast<size_t>(d)]));
    if (nz.empty()) {
        r.tail_estimate = 0;
    } else if (trunc.tail == TailMode::LastTerm || nz.size() < 2) {
        r.tail_estimate = nz.back().second;
    } else {
        const auto [d1, v1] = nz[nz.size() - 2];
        const auto [d2, v2] = nz.back();
        const double ratio = std::pow(v2 / v1, 1.0 / (d2 - d1));
        r.tail_estimate = ratio < 1 ? v2 * ratio / (1 - ratio) : v2;
    }
    return r;
}

// ---- PDE ------------------------------------------------------------------

double pde_residual(const PolyFunction& f, double coupling) {
    const int n = f.n();
    double worst = 0;
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            const PolyFunction lhs = f.derivative_z(j).derivative_z(k);
            const PolyFunction rhs = f.derivative_w(j, k) * cplx(coupling * (j == k ? 2.0 : 1.0));
            worst = std::max(worst, (lhs - rhs).max_abs_coefficient());
        }
    return worst;
}

std::map<MultiIndex, PolyFunction> expand_in_f_basis(const PolyFunction& p, double m) {
    const int n = p.n();
    const double c = fock_scale(m);
    std::map<MultiIndex, PolyFunction> out;
    PolyFunction rest = p;
    for (int D = rest.max_z_degree(); D >= 0; --D) {
        for (const MultiIndex& t : enumerate_multiindices(n, D)) {
            if (t.total() != D) continue;
            PolyFunction lead(n);
            for (const auto& [key, v] : rest.terms())
                if (key.s == t) lead.add_term(MultiIndex::zero(n), key.a, v);
            if (lead.is_zero()) continue;
            // f_t = (c^{|t|}/√t!) z^t + (lower z-degree)
            const PolyFunction ct = lead * cplx(std::sqrt(t.factorial()) / std::pow(c, D));
            rest = rest - ct * basis_f(t, m);
            PolyFunction cleaned(n);
            for (const auto& [key, v] : rest.terms())
                if (key.s != t) cleaned.add_term(key.s, key.a, v);
            rest = cleaned;
            out[t] = ct;
        }
    }
    return out;
}

}  // namespace sjd
