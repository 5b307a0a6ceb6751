#include "sjd/eval.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "sjd/repr.hpp"

namespace sjd {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---- parsing -----------------------------------------------------------------

cplx parse_scalar(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw SchemaError(what + ": expected a number or [re, im]");
}

double parse_real(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    throw SchemaError(what + ": expected a real number");
}

const json& field(const json& args, const std::string& key) {
    if (!args.is_object() || !args.contains(key)) throw SchemaError("missing field '" + key + "'");
    return args.at(key);
}

CRow parse_row(const json& v, int n, const std::string& what) {
    CRow r(n);
    // n = 1: a bare scalar or a single [re, im] is accepted
    if (n == 1 && (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number()))) {
        r(0) = parse_scalar(v, what);
        return r;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw SchemaError(what + ": expected a list of " + std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) r(i) = parse_scalar(v[static_cast<size_t>(i)], what);
    return r;
}

RRow parse_real_row(const json& v, int n, const std::string& what) {
    RRow r(n);
    if (n == 1 && v.is_number()) {
        r(0) = v.get<double>();
        return r;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw SchemaError(what + ": expected a list of " + std::to_string(n) + " real numbers");
    for (int i = 0; i < n; ++i) r(i) = parse_real(v[static_cast<size_t>(i)], what);
    return r;
}

CMatrix parse_matrix(const json& v, int rows, int cols, const std::string& what) {
    CMatrix M(rows, cols);
    if (rows == 1 && cols == 1 && (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number()))) {
        M(0, 0) = parse_scalar(v, what);
        return M;
    }
    if (!v.is_array() || static_cast<int>(v.size()) != rows)
        throw SchemaError(what + ": expected " + std::to_string(rows) + " rows");
    for (int i = 0; i < rows; ++i) {
        const json& row = v[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw SchemaError(what + ": expected " + std::to_string(cols) + " columns");
        for (int j = 0; j < cols; ++j) M(i, j) = parse_scalar(row[static_cast<size_t>(j)], what);
    }
    return M;
}

RMatrix parse_real_matrix(const json& v, int rows, int cols, const std::string& what) {
    const CMatrix M = parse_matrix(v, rows, cols, what);
    if (M.imag().cwiseAbs().maxCoeff() != 0) throw SchemaError(what + ": expected a real matrix");
    return M.real();
}

MultiIndex parse_multiindex(const json& v, int n) {
    if (n == 1 && v.is_number_integer()) return MultiIndex({v.get<int>()});
    if (!v.is_array() || static_cast<int>(v.size()) != n) throw SchemaError("s: expected " + std::to_string(n) + " integers");
    std::vector<int> s;
    for (const auto& e : v) {
        if (!e.is_number_integer() || e.get<int>() < 0) throw SchemaError("s: entries must be non-negative integers");
        s.push_back(e.get<int>());
    }
    return MultiIndex(s);
}

// upper triangle list or full symmetric nested matrix
SymIndex parse_symindex(const json& v, int n) {
    const int d = n * (n + 1) / 2;
    std::vector<int> up;
    auto as_int = [](const json& e) {
        if (!e.is_number_integer() || e.get<int>() < 0) throw SchemaError("a: entries must be non-negative integers");
        return e.get<int>();
    };
    if (v.is_number_integer() && n == 1) return SymIndex(1, {as_int(v)});
    if (!v.is_array()) throw SchemaError("a: expected a list");
    if (static_cast<int>(v.size()) == n && v.size() > 0 && v[0].is_array()) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const int x = as_int(v[static_cast<size_t>(i)][static_cast<size_t>(j)]);
                if (as_int(v[static_cast<size_t>(j)][static_cast<size_t>(i)]) != x) throw SchemaError("a: must be symmetric");
                up.push_back(x);
            }
    } else {
        if (static_cast<int>(v.size()) != d) throw SchemaError("a: expected " + std::to_string(d) + " upper-triangle entries");
        for (const auto& e : v) up.push_back(as_int(e));
    }
    return SymIndex(n, up);
}

int get_n(const json& args, const SuiteConfig& d) {
    if (args.contains("n")) {
        if (!args["n"].is_number_integer() || args["n"].get<int>() < 1 || args["n"].get<int>() > 6)
            throw SchemaError("n: expected an integer in 1..6");
        return args["n"].get<int>();
    }
    return d.n;
}

double get_real(const json& args, const std::string& key, double fallback) {
    return args.contains(key) ? parse_real(args[key], key) : fallback;
}

// {sigma: 2n×2n}, {a, b, c, d} or a bare 2n×2n matrix
SpElement parse_sp(const json& v, int n) {
    if (v.is_object() && v.contains("sigma")) return parse_sp(v["sigma"], n);
    if (v.is_object())
        return SpElement(parse_real_matrix(field(v, "a"), n, n, "a"), parse_real_matrix(field(v, "b"), n, n, "b"),
                         parse_real_matrix(field(v, "c"), n, n, "c"), parse_real_matrix(field(v, "d"), n, n, "d"));
    return SpElement::from_full(parse_real_matrix(v, 2 * n, 2 * n, "sigma"));
}

SpStarElement parse_sp_star(const json& v, int n) {
    return SpStarElement(parse_matrix(field(v, "p"), n, n, "p"), parse_matrix(field(v, "q"), n, n, "q"));
}

JacobiElement parse_jacobi(const json& v, int n) {
    JacobiElement g;
    g.sigma = v.contains("sigma") || v.contains("a") ? parse_sp(v, n) : SpElement::identity(n);
    g.h.lambda = v.contains("lambda") ? parse_real_row(v["lambda"], n, "lambda") : RRow::Zero(n);
    g.h.mu = v.contains("mu") ? parse_real_row(v["mu"], n, "mu") : RRow::Zero(n);
    g.h.kappa = v.contains("kappa") ? parse_real(v["kappa"], "kappa") : 0.0;
    return g;
}

JacobiStarElement parse_jacobi_star(const json& v, int n) {
    const SpStarElement w = v.contains("p") ? parse_sp_star(v, n) : SpStarElement::identity(n);
    const CRow a = v.contains("alpha") ? parse_row(v["alpha"], n, "alpha") : CRow::Zero(n);
    const cplx vk = v.contains("varkappa") ? parse_scalar(v["varkappa"], "varkappa") : cplx(0);
    return JacobiStarElement(w, a, vk);
}

SJDiskPoint parse_disk_point(const json& args, int n, const std::string& wk = "W", const std::string& zk = "z") {
    const CMatrix W = args.contains(wk) ? parse_matrix(args[wk], n, n, wk) : CMatrix::Zero(n, n);
    const CRow z = args.contains(zk) ? parse_row(args[zk], n, zk) : CRow::Zero(n);
    return make_disk_point(W, z);
}

SJSpacePoint parse_space_point(const json& args, int n, const std::string& ok = "Omega", const std::string& zk = "zeta") {
    const CMatrix O = args.contains(ok) ? parse_matrix(args[ok], n, n, ok) : CMatrix(cplx(0, 1) * CMatrix::Identity(n, n));
    const CRow z = args.contains(zk) ? parse_row(args[zk], n, zk) : CRow::Zero(n);
    return make_space_point(O, z);
}

ojson disk_point_json(const SJDiskPoint& x) {
    ojson j;
    j["W"] = matrix_json(x.w.full());
    j["z"] = row_json(x.z);
    return j;
}

ojson space_point_json(const SJSpacePoint& y) {
    ojson j;
    j["Omega"] = matrix_json(y.omega.full());
    j["zeta"] = row_json(y.zeta);
    return j;
}

// Evaluate at (z, W) if a point is given, otherwise return the coefficients.
ojson poly_or_value(const PolyFunction& p, const json& args, int n, const std::string& zk = "z") {
    const bool has_point = args.contains(zk) || args.contains("W");
    if (!has_point) return poly_json(p);
    const CRow z = args.contains(zk) ? parse_row(args[zk], n, zk) : CRow::Zero(n);
    const CMatrix W = args.contains("W") ? parse_matrix(args["W"], n, n, "W") : CMatrix::Zero(n, n);
    return cplx_json(p.evaluate(z, CSymMatrix::from_full(W)));
}

ojson eval_impl(const std::string& obj, const json& args, const SuiteConfig& d) {
    if (!args.is_object()) throw SchemaError("arguments must be a JSON object");
    const int n = get_n(args, d);
    const double m = get_real(args, "m", d.m);
    const double k = get_real(args, "k", d.k);

    if (obj == "P_s") {
        const MultiIndex s = parse_multiindex(field(args, "s"), n);
        return poly_or_value(p_s(s), args, n, "Z");
    }
    if (obj == "Phi") {
        const MultiIndex s = parse_multiindex(field(args, "s"), n);
        const CMatrix W = args.contains("W") ? parse_matrix(args["W"], n, n, "W") : CMatrix::Zero(n, n);
        const PolyFunction phi = basis_phi(DiskPoint(W), s, m);
        if (!args.contains("z")) return poly_json(phi);
        return cplx_json(phi.evaluate(parse_row(args["z"], n, "z"), CSymMatrix::from_full(W)));
    }
    if (obj == "f_s") return poly_or_value(basis_f(parse_multiindex(field(args, "s"), n), m), args, n);
    if (obj == "F_sa" || obj == "Q_a") {
        const SymIndex a = parse_symindex(field(args, "a"), n);
        const QBasis Q = q_basis(n, k, a.degree(), {200000, d.seed});
        if (obj == "Q_a") return poly_or_value(Q[a], args, n);
        const double c_star = get_real(args, "c_star", 1.0);
        return poly_or_value(basis_F(parse_multiindex(field(args, "s"), n), a, m, Q, c_star), args, n);
    }
    if (obj == "J1") {
        return matrix_json(j1(parse_sp(field(args, "sigma"), n), parse_space_point(args, n).omega));
    }
    if (obj == "theta") return cplx_json(theta_factor(parse_jacobi(field(args, "g"), n), parse_space_point(args, n)));
    if (obj == "K1") {
        const UpperHalfPoint Op(parse_matrix(field(args, "Omega_p"), n, n, "Omega_p"));
        const UpperHalfPoint O(parse_matrix(field(args, "Omega"), n, n, "Omega"));
        return matrix_json(k1(Op, O));
    }
    if (obj == "K2") return cplx_json(k2_space(parse_space_point(args, n, "Omega_p", "zeta_p"), parse_space_point(args, n)));
    if (obj == "A") {
        const SJDiskPoint x = parse_disk_point(args, n);
        if (args.contains("W_p") || args.contains("z_p")) return cplx_json(a_polar(parse_disk_point(args, n, "W_p", "z_p"), x));
        return cplx_json(a_form(x));
    }
    if (obj == "Jmk") return cplx_json(jmk(parse_jacobi(field(args, "g"), n), parse_space_point(args, n), m, k));
    if (obj == "JmkStar") {
        const JacobiStarElement g = parse_jacobi_star(field(args, "g"), n);
        const SJDiskPoint x = parse_disk_point(args, n);
        ojson j;
        j["value"] = cplx_json(jmk_star(g, x, m, k));
        j["naive"] = cplx_json(jmk_star_naive(g, x, m, k));
        return j;
    }
    if (obj == "Kmk") {
        const SJSpacePoint y = parse_space_point(args, n);
        if (args.contains("Omega_p") || args.contains("zeta_p"))
            return cplx_json(kmk_kernel(parse_space_point(args, n, "Omega_p", "zeta_p"), y, m, k));
        ojson j;
        j["value"] = kmk_weight(y, m, k);
        j["naive"] = kmk_weight_naive(y, m, k);
        return j;
    }
    if (obj == "KmkStar") {
        const SJDiskPoint x = parse_disk_point(args, n);
        if (args.contains("W_p") || args.contains("z_p"))
            return cplx_json(kmk_star_kernel(parse_disk_point(args, n, "W_p", "z_p"), x, m, k));
        return kmk_star_weight(x, m, k);
    }
    if (obj == "action") {
        const std::string group = field(args, "group").get<std::string>();
        const json& g = field(args, "g");
        if (group == "sp") {
            const UpperHalfPoint O(parse_matrix(field(args, "Omega"), n, n, "Omega"));
            ojson j;
            j["Omega"] = matrix_json(act_upper_half(parse_sp(g, n), O).full());
            return j;
        }
        if (group == "sp_star") {
            const DiskPoint W(parse_matrix(field(args, "W"), n, n, "W"));
            ojson j;
            j["W"] = matrix_json(act_disk(parse_sp_star(g, n), W).full());
            return j;
        }
        if (group == "jacobi") return space_point_json(act_sj_space(parse_jacobi(g, n), parse_space_point(args, n)));
        if (group == "jacobi_star") return disk_point_json(act_sj_disk(parse_jacobi_star(g, n), parse_disk_point(args, n)));
        throw SchemaError("group must be one of sp, sp_star, jacobi, jacobi_star");
    }
    if (obj == "cayley") {
        const std::string dir = args.contains("direction") ? args["direction"].get<std::string>() : "forward";
        if (dir == "forward") return space_point_json(cayley_forward(parse_disk_point(args, n)));
        if (dir == "inverse") return disk_point_json(cayley_inverse(parse_space_point(args, n)));
        throw SchemaError("direction must be forward or inverse");
    }
    throw SchemaError("unknown object '" + obj + "'");
}

// ---- tables ------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;
};

std::string label(const MultiIndex& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.s.size(); ++i) out += (i ? "," : "") + std::to_string(s.s[i]);
    return out + ")";
}

std::string label(const SymIndex& a) {
    std::string out = "(";
    for (size_t i = 0; i < a.a.size(); ++i) out += (i ? "," : "") + std::to_string(a.a[i]);
    return out + ")";
}

Table table_gram_phi(const SuiteConfig& c) {
    Table t{{"i", "j", "s_i", "s_j", "re", "im", "sigma"}, {}};
    const auto idx = enumerate_multiindices(c.n, c.trunc);
    const DiskPoint W = DiskPoint::origin(c.n);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) {
            const cplx g = fock_inner(basis_phi(W, idx[i], c.m), basis_phi(W, idx[j], c.m), W, c.m,
                                      FockNormalization::Calibrated);
            t.rows.push_back({i, j, label(idx[i]), label(idx[j]), g.real(), g.imag(), 0.0});
        }
    return t;
}

Table table_gram_F(const SuiteConfig& c) {
    if (!(c.k > c.n + 0.5)) throw InvalidArgument("weight must satisfy k > n + 1/2");
    const ReprParams p{c.n, c.m, c.k, 1.0};
    const GramResult G = gram_matrix(p, 3, 2, {c.samples.value_or(100000), c.seed, 1 << 14});
    Table t{{"i", "j", "label_i", "label_j", "re", "im", "sigma"}, {}};
    for (size_t i = 0; i < G.labels.size(); ++i)
        for (size_t j = 0; j < G.labels.size(); ++j) {
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            t.rows.push_back({i, j, "s=" + label(G.labels[i].first) + " a=" + label(G.labels[i].second),
                              "s=" + label(G.labels[j].first) + " a=" + label(G.labels[j].second),
                              G.gram.mean(ii, jj).real(), G.gram.mean(ii, jj).imag(), G.gram.sigma(ii, jj)});
        }
    return t;
}

Table table_expansion(const SuiteConfig& c) {
    if (!(c.k > c.n + 0.5)) throw InvalidArgument("weight must satisfy k > n + 1/2");
    Rng rng(c.seed);
    const SJDiskPoint xp = sample_sj_disk_point(c.n, 0.3, 0.3, rng), x = sample_sj_disk_point(c.n, 0.3, 0.3, rng);
    const QBasis Q = q_basis(c.n, c.k, c.n == 1 ? c.trunc : 2, {200000, c.seed});
    const ExpansionParams ep{c.m, c.k, 1.0, &Q};
    TruncationSpec ts;
    ts.max_degree = c.trunc;
    Table t{{"expansion", "degree", "partial_re", "partial_im", "closed_re", "closed_im", "residual"}, {}};
    for (Expansion w : {Expansion::H11, Expansion::H27, Expansion::H35, Expansion::Fock426}) {
        if (w == Expansion::Fock426 && !Q.exact) continue;
        const auto e = kernel_expansion_truncated(xp, x, w, ts, ep);
        for (size_t d = 0; d < e.partial_by_degree.size(); ++d) {
            const cplx v = e.partial_by_degree[d];
            t.rows.push_back({to_string(w), d, v.real(), v.imag(), e.closed_form.real(), e.closed_form.imag(),
                              std::abs(v - e.closed_form)});
        }
    }
    return t;
}

Table table_calibration(const SuiteConfig& c) {
    Table t{{"n", "m", "nominal", "calibrated", "ratio"}, {}};
    for (int n = 1; n <= 3; ++n) {
        const Calibration cal = calibrate_norms(n, c.m);
        t.rows.push_back({n, c.m, cal.nominal, cal.calibrated, cal.ratio});
    }
    return t;
}

std::string csv_cell(const ojson& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(17) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

}  // namespace

ojson poly_json(const PolyFunction& p) {
    ojson out = ojson::array();
    for (const auto& [key, c] : p.terms()) {
        ojson t;
        t["s"] = key.s.s;
        t["a"] = key.a.a;
        t["c"] = cplx_json(c);
        out.push_back(t);
    }
    return out;
}

const std::vector<std::string>& eval_objects() {
    static const std::vector<std::string> v = {"P_s", "Phi", "f_s", "F_sa", "Q_a", "J1", "theta", "K1",
                                               "K2",  "A",   "Jmk", "JmkStar", "Kmk", "KmkStar", "action", "cayley"};
    return v;
}

ojson eval_object(const std::string& object, const json& args, const SuiteConfig& defaults) {
    try {
        return eval_impl(object, args, defaults);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed arguments: ") + e.what());
    }
}

const std::vector<std::string>& table_kinds() {
    static const std::vector<std::string> v = {"gram-phi", "gram-F", "expansion-convergence", "calibration"};
    return v;
}

std::string make_table(const std::string& kind, const SuiteConfig& cfg, const std::string& format) {
    if (format != "csv" && format != "json") throw InvalidArgument("format must be csv or json");
    if (!(cfg.m > 0)) throw InvalidArgument("index m must be positive");
    if (cfg.n < 1 || cfg.n > 4) throw InvalidArgument("dimension n must be in 1..4");
    Table t;
    if (kind == "gram-phi") t = table_gram_phi(cfg);
    else if (kind == "gram-F") t = table_gram_F(cfg);
    else if (kind == "expansion-convergence") t = table_expansion(cfg);
    else if (kind == "calibration") t = table_calibration(cfg);
    else throw InvalidArgument("unknown table kind '" + kind + "'");

    if (format == "json") {
        ojson j;
        j["kind"] = kind;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace sjd
