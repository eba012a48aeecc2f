#include "ckq/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace ckq {

namespace {

const cplx kI(0, 1);

struct Piece {
    cplx c;
    bool plus;
    int a, b;
};
struct Comp {
    cplx c;
    int a, b;
};

const std::map<std::string, std::vector<Piece>>& primed_functionals() {
    static const std::map<std::string, std::vector<Piece>> m = {
        {"l11", {{1.0, true, 0, 0}}},
        {"l12", {{0.5, true, 0, 1}, {-0.5, false, 2, 1}}},
        {"l~12", {{0.5 * kI, true, 0, 1}, {0.5 * kI, false, 2, 1}}},
        {"l21", {{0.5, true, 1, 2}, {-0.5, false, 1, 0}}},
        {"l~21", {{0.5 * kI, true, 1, 2}, {0.5 * kI, false, 1, 0}}},
        {"l13", {{0.5, true, 0, 2}, {-0.5, false, 2, 0}}},
        {"l~13", {{0.5 * kI, true, 0, 2}, {0.5 * kI, false, 2, 0}}},
    };
    return m;
}

const std::map<std::string, std::vector<Comp>>& primed_components() {
    const cplx h = 0.5, hi = 0.5 / kI;
    static const std::map<std::string, std::vector<Comp>> m = {
        {"t11", {{h, 0, 0}, {h, 2, 2}}},   {"t~11", {{hi, 0, 0}, {-hi, 2, 2}}},
        {"t12", {{-h, 0, 1}, {h, 2, 1}}},  {"t~12", {{hi, 0, 1}, {hi, 2, 1}}},
        {"t13", {{-h, 0, 2}, {h, 2, 0}}},  {"t~13", {{hi, 0, 2}, {hi, 2, 0}}},
        {"t21", {{h, 1, 0}, {-h, 1, 2}}},  {"t~21", {{hi, 1, 0}, {hi, 1, 2}}},
        {"t22", {{1.0, 1, 1}}},
    };
    return m;
}

// exponents of (j1, j2) in the weights m_l, m_t
const std::map<std::string, std::pair<int, int>> kFunctionalExp = {
    {"l11", {0, 0}}, {"l12", {1, 0}}, {"l~12", {0, 1}}, {"l21", {1, 0}},
    {"l~21", {0, 1}}, {"l13", {0, 0}}, {"l~13", {1, 1}}};
const std::map<std::string, std::pair<int, int>> kComponentExp = {
    {"t11", {0, 0}}, {"t~11", {1, 1}}, {"t12", {1, 0}}, {"t~12", {0, 1}}, {"t13", {0, 0}},
    {"t~13", {1, 1}}, {"t21", {1, 0}}, {"t~21", {0, 1}}, {"t22", {0, 0}}};

Pim weight(const Signature& sig, std::pair<int, int> e) {
    const int n = sig.tags();
    return pim_pow(slot_value(sig, 1), e.first) * pim_pow(slot_value(sig, 2), e.second) * Pim(n, 1.0);
}

ExpSum ch(double a) { return {{{0.5, a}, {0.5, -a}}}; }
ExpSum shh(double a) { return {{{0.5, a}, {-0.5, -a}}}; }
ExpSum sum(ExpSum a, const ExpSum& b, cplx s = 1.0) {
    for (auto [c, al] : b.terms) a.terms.push_back({s * c, al});
    return a;
}

DualFunctionals functionals_from(const DMat& R, const Signature& sig, cplx v) {
    DualFunctionals d;
    d.sig = sig;
    d.v = v;
    d.R = R;
    d.P = flip_matrix(3, R.n());
    d.Rp = d.P * R * d.P;
    d.Rm = lower_triangular_inverse(R);
    return d;
}

Pim pairing_from(const DualFunctionals& d, const std::string& l, const std::string& t) {
    Pim s(d.R.n());
    for (const auto& p : primed_functionals().at(l)) {
        const DMat& M = p.plus ? d.Rp : d.Rm;
        for (const auto& c : primed_components().at(t)) s += (p.c * c.c) * M(p.a * 3 + c.a, p.b * 3 + c.b);
    }
    return s;
}

std::vector<PairingRow> table_rows(const DualFunctionals& d, const std::function<Pim(cplx, int, int, const ExpSum&)>& eval,
                                   const std::function<Pim(std::pair<int, int>)>& w) {
    std::vector<PairingRow> rows;
    const auto& printed = printed_pairings();
    for (const auto& l : functional_names())
        for (const auto& t : component_names()) {
            PairingRow r;
            r.l = l;
            r.t = t;
            const auto [tl1, tl2] = kComponentExp.at(t);
            auto it = std::find_if(printed.begin(), printed.end(), [&](const PrintedPairing& p) { return p.l == l && p.t == t; });
            r.rhs = w(kFunctionalExp.at(l)) * pairing_from(d, l, t);
            if (it != printed.end()) {
                r.listed = true;
                r.printed = it->text;
                r.lhs = eval(it->coef, it->e1 + tl1, it->e2 + tl2, it->f);
            } else {
                r.lhs = Pim(d.R.n());
            }
            r.diff = max_diff(r.lhs, r.rhs);
            rows.push_back(r);
        }
    return rows;
}

// 27x27 lifts: L1 = L ⊗ 1 and L2 = 1 ⊗ L over the two auxiliary spaces, blocks ρ(L_ij) in the representation space
DMat lift(const DualFunctionals& d, bool plus, bool first) {
    const int n = d.R.n();
    DMat B(27, 27, n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const DMat r = rho_L(d, plus, i, j);
            for (int k = 0; k < 3; ++k)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) {
                        const int row = first ? (i * 3 + k) * 3 + x : (k * 3 + i) * 3 + x;
                        const int col = first ? (j * 3 + k) * 3 + y : (k * 3 + j) * 3 + y;
                        B(row, col) = r(x, y);
                    }
        }
    return B;
}

DMat lift_scalar(const DMat& R) {
    DMat B(27, 27, R.n());
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            for (int x = 0; x < 3; ++x) B(a * 3 + x, b * 3 + x) = R(a, b);
    return B;
}

Pim fn(const AnalyticKernel& k, const Pim& a) { return pim_apply(k, a); }

json jrow(const PairingRow& r) {
    return {{"l", r.l}, {"t", r.t}, {"printed", r.printed}, {"expected", r.lhs.str(10)}, {"computed", r.rhs.str(10)},
            {"diff", r.diff}};
}

}  // namespace

DMat flip_matrix(int N, int tags) {
    DMat P(N * N, N * N, tags);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) P(a * N + b, b * N + a) = Pim(tags, 1.0);
    return P;
}

DMat lower_triangular_inverse(const DMat& L) {
    const int N = L.rows(), n = L.n();
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (!L(i, j).is_zero()) throw std::invalid_argument("lower_triangular_inverse: matrix is not lower triangular");
    DMat X(N, N, n);
    for (int c = 0; c < N; ++c)
        for (int i = c; i < N; ++i) {
            Pim s(n, i == c ? 1.0 : 0.0);
            for (int k = c; k < i; ++k) s -= L(i, k) * X(k, c);
            X(i, c) = s * pim_inv(L(i, i));
        }
    return X;
}

DualFunctionals build_functionals(const RMatrix& R) { return functionals_from(R.R, R.sig, R.v); }
DualFunctionals build_functionals(const Signature& sig, cplx v) { return build_functionals(rmatrix3(sig, v)); }

DMat rho_L(const DualFunctionals& d, bool plus, int i, int j) {
    const DMat& M = plus ? d.Rp : d.Rm;
    DMat r(3, 3, M.n());
    for (int c = 0; c < 3; ++c)
        for (int e = 0; e < 3; ++e) r(c, e) = M(i * 3 + c, j * 3 + e);
    return r;
}

std::vector<std::string> functional_names() { return {"l11", "l12", "l~12", "l21", "l~21", "l13", "l~13"}; }

DMat rho_functional_primed(const DualFunctionals& d, const std::string& name) {
    DMat out(3, 3, d.R.n());
    for (const auto& p : primed_functionals().at(name)) out = out + Pim(d.R.n(), p.c) * rho_L(d, p.plus, p.a, p.b);
    return out;
}

DMat rho_functional(const DualFunctionals& d, const std::string& name) {
    return functional_weight(d.sig, name) * rho_functional_primed(d, name);
}

Pim pairing_primed(const DualFunctionals& d, const std::string& l, const std::string& t) { return pairing_from(d, l, t); }

Pim functional_weight(const Signature& sig, const std::string& l) { return weight(sig, kFunctionalExp.at(l)); }
Pim component_weight(const Signature& sig, const std::string& t) { return weight(sig, kComponentExp.at(t)); }

cplx ExpSum::operator()(cplx z) const {
    cplx s = 0;
    for (auto [a, al] : terms) s += a * std::exp(al * z);
    return s;
}

cplx ExpSum::taylor(int k) const {
    cplx s = 0;
    for (auto [a, al] : terms) s += a * std::pow(al, k) / std::tgamma(k + 1.0);
    return s;
}

const std::vector<PrintedPairing>& printed_pairings() {
    static const std::vector<PrintedPairing> table = [] {
        const ExpSum one{{{1.0, 0.0}}};
        const ExpSum s32 = sum(shh(1.5), shh(0.5)), c32 = sum(ch(1.5), ch(0.5), -1.0);
        const ExpSum c2m1 = sum(ch(2.0), one, -1.0), s2 = sum(shh(1.0), shh(2.0), -0.5);
        // s2 = sinh z - sinh 2z / 2, so 2 s2 = 2 sinh z - sinh 2z
        std::vector<PrintedPairing> t = {
            {"l11", "t22", 1.0, 0, 0, one, "1"},
            {"l11", "t11", 1.0, 0, 0, ch(1), "cosh Jv"},
            {"l11", "t~11", -1.0, -1, -1, shh(1), "-J^-1 sinh Jv"},
            {"l12", "t~21", -kI, 1, -1, shh(1), "-i j1^2 J^-1 sinh Jv"},
            {"l12", "t~12", 0.5 * kI, 1, -1, s32, "i j1^2 (2J)^-1 (sinh 3Jv/2 + sinh Jv/2)"},
            {"l12", "t12", 0.5, 0, 0, c32, "(cosh 3Jv/2 - cosh Jv/2)/2"},
            {"l~12", "t~12", 0.5, 0, 0, c32, "(cosh 3Jv/2 - cosh Jv/2)/2"},
            {"l~12", "t21", kI, -1, 1, shh(1), "i j2^2 J^-1 sinh Jv"},
            {"l~12", "t12", -0.5 * kI, -1, 1, s32, "-i j2^2 (2J)^-1 (sinh 3Jv/2 + sinh Jv/2)"},
            {"l21", "t~12", -kI, 1, -1, shh(1), "-i j1^2 J^-1 sinh Jv"},
            {"l21", "t~21", 0.5 * kI, 1, -1, s32, "i j1^2 (2J)^-1 (sinh 3Jv/2 + sinh Jv/2)"},
            {"l~21", "t12", kI, -1, 1, shh(1), "i j2^2 J^-1 sinh Jv"},
            {"l~21", "t21", -0.5 * kI, -1, 1, s32, "-i j2^2 (2J)^-1 (sinh 3Jv/2 + sinh Jv/2)"},
            {"l13", "t13", 0.5, 0, 0, c2m1, "(cosh 2Jv - 1)/2"},
            {"l~13", "t~13", 0.5, 0, 0, c2m1, "(cosh 2Jv - 1)/2"},
            {"l21", "t21", 0.5, 0, 0, c32, "(cosh 3Jv/2 - cosh Jv/2)/2"},
            {"l~21", "t~21", 0.5, 0, 0, c32, "(cosh 3Jv/2 - cosh Jv/2)/2"},
            {"l13", "t~13", -2.0 * kI, -1, -1, s2, "-i J^-1 (2 sinh Jv - sinh 2Jv)"},
            {"l~13", "t13", 2.0 * kI, 1, 1, s2, "i J (2 sinh Jv - sinh 2Jv)"},
        };
        return t;
    }();
    return table;
}

SlotAssignment SlotAssignment::from(const Signature& sig) {
    SlotAssignment s;
    s.tags = sig.tags();
    for (Slot x : sig.slots()) {
        if (x == Slot::Im) throw QuantumSignatureError("imaginary slots have no quantum pairing");
        s.nil.push_back(x == Slot::Nil);
        s.value.push_back(1.0);
    }
    return s;
}

SlotAssignment SlotAssignment::numeric(double j1, double j2) {
    SlotAssignment s;
    s.tags = 0;
    s.nil = {false, false};
    s.value = {j1, j2};
    return s;
}

Pim evaluate_printed(const SlotAssignment& s, cplx coef, int a1, int a2, const ExpSum& f, cplx v) {
    const int n = s.tags;
    const int a[2] = {a1, a2};
    const bool any_nil = s.nil[0] || s.nil[1];
    if (!any_nil) {
        const double J = s.value[0] * s.value[1];
        return Pim(n, coef * std::pow(s.value[0], a1) * std::pow(s.value[1], a2) * f(J * v));
    }
    int kmax = 1 << 20;
    for (int r = 0; r < 2; ++r)
        if (s.nil[r]) kmax = std::min(kmax, 1 - a[r]);
    Pim out(n);
    double scale = 0;
    for (auto [c, al] : f.terms) scale = std::max(scale, std::abs(c));
    for (int k = 0; k <= kmax; ++k) {
        const cplx fk = f.taylor(k);
        if (std::abs(fk) <= 1e-14 * std::max(1.0, scale)) continue;
        Pim term(n, coef * fk * std::pow(v, k));
        for (int r = 0; r < 2; ++r) {
            const int e = a[r] + k;
            if (s.nil[r]) {
                if (e < 0) throw std::domain_error("negative power of a nilpotent slot survives in a printed value");
                if (e == 1) term = term * Pim::tag(n, r + 1);
            } else {
                term *= std::pow(s.value[r], e);
            }
        }
        out += term;
    }
    return out;
}

std::vector<PairingRow> pairing_table(const Signature& sig, cplx v) {
    const SlotAssignment s = SlotAssignment::from(sig);
    const DualFunctionals d = build_functionals(sig, v);
    return table_rows(
        d, [&](cplx c, int a1, int a2, const ExpSum& f) { return evaluate_printed(s, c, a1, a2, f, v); },
        [&](std::pair<int, int> e) { return weight(sig, e); });
}

std::vector<PairingRow> pairing_table_numeric(double j1, double j2, cplx v) {
    const SlotAssignment s = SlotAssignment::numeric(j1, j2);
    const DualFunctionals d = functionals_from(rmatrix_q(Pim(0, j1 * j2 * v)), Signature({Slot::One, Slot::One}), v);
    return table_rows(
        d, [&](cplx c, int a1, int a2, const ExpSum& f) { return evaluate_printed(s, c, a1, a2, f, v); },
        [&](std::pair<int, int> e) { return Pim(0, std::pow(j1, e.first) * std::pow(j2, e.second)); });
}

Report verify_pairing_table(const Signature& sig, cplx v) {
    require_quantum(sig);
    Report r;
    r.check = "dual.pairing";
    r.inputs = {{"signature", sig.str()}, {"v", format_complex(v)}};
    const auto rows = pairing_table(sig, v);
    double listed = 0, unlisted = 0;
    json mism = json::array(), extra = json::array();
    int nlisted = 0;
    for (const auto& row : rows) {
        if (row.listed) {
            ++nlisted;
            listed = std::max(listed, row.diff);
            if (row.diff > 1e-10) mism.push_back(jrow(row));
        } else {
            unlisted = std::max(unlisted, row.rhs.max_abs());
            if (row.rhs.max_abs() > 1e-10) extra.push_back(jrow(row));
        }
    }

    // The last two printed entries carry J^-1 and J. Probe with real, unequal slot values to tell the variants apart.
    struct Variant {
        std::string name;
        int e13, et13;  // J exponent in l13(t~13) and l~13(t13)
        double scale;
    };
    const std::vector<Variant> variants = {{"printed J^-1 / J", -1, 1, 1.0},     {"J^-1 / J^-1", -1, -1, 1.0},
                                           {"J / J", 1, 1, 1.0},                  {"printed J^-1 / J, halved", -1, 1, 0.5},
                                           {"J^-1 / J^-1, halved", -1, -1, 0.5},  {"J / J, halved", 1, 1, 0.5}};
    const double pj1 = 0.7, pj2 = 1.6;
    const auto probe = pairing_table_numeric(pj1, pj2, v);
    const SlotAssignment ps = SlotAssignment::numeric(pj1, pj2);
    const auto& printed = printed_pairings();
    const PrintedPairing& p1 = printed[17];
    const PrintedPairing& p2 = printed[18];
    json matching = json::array();
    for (const auto& var : variants) {
        double worst = 0;
        for (const auto& row : probe) {
            const PrintedPairing* p = nullptr;
            int e = 0;
            if (row.l == p1.l && row.t == p1.t) p = &p1, e = var.e13;
            if (row.l == p2.l && row.t == p2.t) p = &p2, e = var.et13;
            if (!p) continue;
            const auto [c1, c2] = kComponentExp.at(row.t);
            const Pim lhs = evaluate_printed(ps, p->coef * var.scale, e + c1, e + c2, p->f, v);
            worst = std::max(worst, max_diff(lhs, row.rhs));
        }
        if (worst <= 1e-10) matching.push_back(var.name);
    }

    r.residual = listed;
    r.tolerance = 1e-10;
    r.conditions = {{"complete", unlisted <= 1e-10}};
    r.detail = {{"listed_entries", nlisted},
                {"max_listed_diff", listed},
                {"max_unlisted_value", unlisted},
                {"mismatches", mism},
                {"unlisted_nonzero", extra},
                {"asymmetric_entries", {p1.l + "(" + p1.t + ")", p2.l + "(" + p2.t + ")"}},
                {"asymmetry_probe", {pj1, pj2}},
                {"asymmetry_matching_variants", matching}};
    return r.finish();
}

Report verify_L_relations(const Signature& sig, cplx v) {
    require_quantum(sig);
    const DualFunctionals d = build_functionals(sig, v);
    const int n = d.R.n();
    Report r;
    r.check = "dual.lrel";
    r.inputs = {{"signature", sig.str()}, {"v", format_complex(v)}};
    json res = json::object();

    const DMat Rp = lift_scalar(d.Rp);
    const DMat P1 = lift(d, true, true), P2 = lift(d, true, false), M1 = lift(d, false, true), M2 = lift(d, false, false);
    res["RLL_pp"] = max_diff(Rp * P1 * P2, P2 * P1 * Rp);
    res["RLL_mm"] = max_diff(Rp * M1 * M2, M2 * M1 * Rp);
    res["RLL_pm"] = max_diff(Rp * P1 * M2, M2 * P1 * Rp);

    const DMat Ct = cmatrix(sig, v).C.transpose(), Cti = dmat_inverse(Ct);
    for (bool plus : {true, false}) {
        double e1 = 0, e2 = 0;
        for (int a = 0; a < 3; ++a)
            for (int dd = 0; dd < 3; ++dd) {
                DMat s1(3, 3, n), s2(3, 3, n);
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c) {
                        s1 = s1 + Ct(b, c) * (rho_L(d, plus, a, b) * rho_L(d, plus, dd, c));
                        s2 = s2 + Cti(b, c) * (rho_L(d, plus, b, a) * rho_L(d, plus, c, dd));
                    }
                e1 = std::max(e1, max_diff(s1, Ct(a, dd) * DMat::identity(3, n)));
                e2 = std::max(e2, max_diff(s2, Cti(a, dd) * DMat::identity(3, n)));
            }
        res[plus ? "LCLt_p" : "LCLt_m"] = e1;
        res[plus ? "LtCinvL_p" : "LtCinvL_m"] = e2;
    }
    const DMat I = DMat::identity(3, n);
    double diag = 0;
    for (int k = 0; k < 3; ++k) {
        diag = std::max(diag, max_diff(rho_L(d, true, k, k) * rho_L(d, false, k, k), I));
        diag = std::max(diag, max_diff(rho_L(d, false, k, k) * rho_L(d, true, k, k), I));
    }
    res["diag_pm"] = diag;
    res["diag_product"] = max_diff(rho_L(d, true, 0, 0) * rho_L(d, true, 1, 1) * rho_L(d, true, 2, 2), I);

    double worst = 0;
    for (auto it = res.begin(); it != res.end(); ++it) worst = std::max(worst, it.value().get<double>());
    r.residual = worst;
    r.tolerance = 1e-9;
    r.detail = {{"identities", res}};
    return r.finish();
}

std::vector<DMat> dual_commutator_residuals(const DualFunctionals& d) {
    const Signature& sig = d.sig;
    const int n = d.R.n();
    const Pim j1 = slot_value(sig, 1), j2 = slot_value(sig, 2), J = j1 * j2, one(n, 1.0);
    const Pim z = J * d.v, z2 = z * z;
    const Pim c = fn(kernels::cosh(), z);
    const Pim s = (kI * d.v) * fn(kernels::shc_sq(), z2);                       // i J^-1 sinh Jv
    const Pim h = (2.0 * kI) * J * fn(kernels::sinh(), z * cplx(0.5));          // 2i J sinh(Jv/2)
    const Pim t = (kI * d.v * 0.5) * fn(kernels::thc_sq(), z2 * cplx(0.25));    // i J^-1 tanh(Jv/2)
    const DMat l11 = rho_functional(d, "l11"), l12 = rho_functional(d, "l12"), lt = rho_functional(d, "l~12");
    const DMat I = DMat::identity(3, n);
    const DMat r1 = c * (l11 * l12) - l12 * l11 - (j1 * j1 * s) * (l11 * lt);
    const DMat r2 = c * (l11 * lt) - lt * l11 + (j2 * j2 * s) * (l11 * l12);
    const DMat r3 = l12 * lt - lt * l12 - h * (I - l11 * l11) + t * ((j2 * j2) * (l12 * l12) + (j1 * j1) * (lt * lt));
    return {r1, r2, r3};
}

Report verify_dual_commutators(const Signature& sig, cplx v) {
    require_quantum(sig);
    const auto res = dual_commutator_residuals(build_functionals(sig, v));
    Report r;
    r.check = "dual.commutators";
    r.inputs = {{"signature", sig.str()}, {"v", format_complex(v)}};
    json per = json::array();
    double worst = 0;
    for (const auto& m : res) {
        per.push_back(m.max_abs());
        worst = std::max(worst, m.max_abs());
    }
    r.residual = worst;
    r.tolerance = 1e-9;
    r.detail = {{"relations", per}};
    return r.finish();
}

namespace {

// ⟨u_0 ... u_{k-1}, x⟩ for x in the entry alphabet, by splitting x with the coproduct
Pim pair_word(const DualFunctionals& d, const std::vector<std::string>& u, std::size_t from, const FreeElement& x,
              std::map<std::pair<std::size_t, int>, Pim>& memo);

Pim pair_generator(const DualFunctionals& d, const std::vector<std::string>& u, std::size_t from, int g,
                   std::map<std::pair<std::size_t, int>, Pim>& memo) {
    const int n = d.R.n();
    auto key = std::make_pair(from, g);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Pim out(n);
    if (from + 1 == u.size()) {
        const DMat r = rho_functional(d, u[from]);
        out = r(g / 3, g % 3);
    } else {
        const FreeElement dx = coproduct(FreeElement::generator(9, n, g));
        const DMat r = rho_functional(d, u[from]);
        for (const auto& [m, c] : dx.terms()) {
            const int left = m.word[0], right = m.word[1] - 9;
            out += (Pim::monomial(n, m.mask, c) * r(left / 3, left % 3)) *
                   pair_word(d, u, from + 1, FreeElement::generator(9, n, right), memo);
        }
    }
    memo[key] = out;
    return out;
}

Pim pair_word(const DualFunctionals& d, const std::vector<std::string>& u, std::size_t from, const FreeElement& x,
              std::map<std::pair<std::size_t, int>, Pim>& memo) {
    Pim out(d.R.n());
    for (const auto& [m, c] : x.terms()) out += Pim::monomial(d.R.n(), m.mask, c) * pair_generator(d, u, from, m.word[0], memo);
    return out;
}

}  // namespace

Report verify_rho_homomorphism(const Signature& sig, cplx v, unsigned long long seed, int words) {
    require_quantum(sig);
    const DualFunctionals d = build_functionals(sig, v);
    const int n = d.R.n();
    const auto names = functional_names();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, 3), pick(0, static_cast<int>(names.size()) - 1);
    double worst = 0;
    for (int w = 0; w < words; ++w) {
        std::vector<std::string> u(len(rng));
        for (auto& x : u) x = names[pick(rng)];
        DMat prod = DMat::identity(3, n);
        for (const auto& x : u) prod = prod * rho_functional(d, x);
        std::map<std::pair<std::size_t, int>, Pim> memo;
        DMat via(3, 3, n);
        for (int g = 0; g < 9; ++g) via(g / 3, g % 3) = pair_generator(d, u, 0, g, memo);
        worst = std::max(worst, max_diff(prod, via));
    }
    Report r;
    r.check = "dual.rho_homomorphism";
    r.inputs = {{"signature", sig.str()}, {"v", format_complex(v)}};
    r.residual = worst;
    r.tolerance = 1e-10;
    r.detail = {{"words", words}, {"seed", seed}};
    return r.finish();
}

std::vector<Report> verify_dual_rep(const Signature& sig, const std::vector<cplx>& vs, unsigned long long seed) {
    std::vector<Report> out;
    for (cplx v : vs) {
        out.push_back(verify_pairing_table(sig, v));
        out.push_back(verify_L_relations(sig, v));
        out.push_back(verify_dual_commutators(sig, v));
        out.push_back(verify_rho_homomorphism(sig, v, seed));
    }
    return out;
}

}  // namespace ckq
