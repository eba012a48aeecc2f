#include "ckq/frt.hpp"

#include <algorithm>
#include <cmath>

namespace ckq {

namespace {

const cplx kI(0, 1);

Pim ex(const Pim& z) { return pim_apply(kernels::exp(), z); }
Pim sh(const Pim& z) { return pim_apply(kernels::sinh(), z); }

double max_abs_all(const std::vector<FreeElement>& xs) {
    double m = 0;
    for (const auto& x : xs) m = std::max(m, x.max_abs());
    return m;
}

}  // namespace

void require_quantum(const Signature& sig) {
    if (!sig.quantum_allowed())
        throw QuantumSignatureError("quantum constructions take j_k in {1, iota_k}; signature " + sig.str() +
                                    " contains an imaginary slot");
    if (sig.N() != 3) throw QuantumSignatureError("quantum constructions are built for N = 3 only");
}

Pim quantum_J(const Signature& sig) {
    Pim J(sig.tags(), 1.0);
    for (int r = 1; r <= sig.tags(); ++r) J = J * slot_value(sig, r);
    return J;
}

DMat rmatrix_q(const Pim& z) {
    const int n = z.n();
    const Pim one(n, 1.0), q = ex(z), qi = ex(-z), s2 = 2.0 * sh(z), mid = -2.0 * ex(z * cplx(-0.5)) * sh(z);
    DMat R(9, 9, n);
    for (int k = 0; k < 9; ++k) R(k, k) = one;
    R(0, 0) = q;
    R(8, 8) = q;
    R(2, 2) = qi;
    R(6, 6) = qi;
    R(3, 1) = s2;
    R(7, 5) = s2;
    R(4, 2) = mid;
    R(6, 4) = mid;
    R(6, 2) = (one - qi) * s2;
    return R;
}

RMatrix rmatrix3(const Signature& sig, cplx v) {
    require_quantum(sig);
    return {rmatrix_q(quantum_J(sig) * v), sig, v};
}

DMat rmatrix_tilde(int tags) {
    DMat T(9, 9, tags);
    auto set = [&](int r, int c, double x) { T(r - 1, c - 1) = Pim(tags, x); };
    set(1, 1, 1);
    set(9, 9, 1);
    set(3, 3, -1);
    set(7, 7, -1);
    set(4, 2, 2);
    set(8, 6, 2);
    set(5, 3, -2);
    set(7, 5, -2);
    return T;
}

RMatrix corrupt(RMatrix R, int row, int col, cplx factor) {
    R.R(row - 1, col - 1) *= factor;
    return R;
}

DMat cmatrix_q(int N, const Pim& z) {
    const int n = z.n(), h = N / 2;
    std::vector<double> rho;
    if (N % 2) {
        for (int k = 0; k < h; ++k) rho.push_back(h - 0.5 - k);
        rho.push_back(0);
        for (int k = 0; k < h; ++k) rho.push_back(-0.5 - k);
    } else {
        for (int k = 0; k < h; ++k) rho.push_back(h - 1 - k);
        for (int k = 0; k < h; ++k) rho.push_back(-k);
    }
    DMat C(N, N, n);
    for (int i = 0; i < N; ++i) C(i, N - 1 - i) = ex(z * rho[N - 1 - i]);
    return C;
}

CMatrix cmatrix(const Signature& sig, cplx v) {
    if (!sig.quantum_allowed()) throw QuantumSignatureError("cmatrix: signature " + sig.str() + " contains an imaginary slot");
    return {cmatrix_q(sig.N(), quantum_J(sig) * v), sig, v};
}

double qybe_check(const DMat& R) {
    const int n = R.n();
    DMat R12(27, 27, n), R23(27, 27, n), R13(27, 27, n);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2)
                        for (int c2 = 0; c2 < 3; ++c2) {
                            const int row = a * 9 + b * 3 + c, col = a2 * 9 + b2 * 3 + c2;
                            if (c == c2) R12(row, col) = R(a * 3 + b, a2 * 3 + b2);
                            if (a == a2) R23(row, col) = R(b * 3 + c, b2 * 3 + c2);
                            if (b == b2) R13(row, col) = R(a * 3 + c, a2 * 3 + c2);
                        }
    return max_diff(R12 * R13 * R23, R23 * R13 * R12);
}

FreeElement TForm::at(int a, int b) const {
    FreeElement e(alphabet(), tags);
    for (const auto& [g, c] : entry[a * 3 + b]) e += c * FreeElement::generator(alphabet(), tags, g);
    return e;
}

TForm tform_entries(int tags, unsigned iota_mask) {
    TForm T;
    T.tags = tags;
    T.iota_mask = iota_mask;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            T.names.push_back("t" + std::to_string(a + 1) + std::to_string(b + 1));
            T.entry.push_back({{a * 3 + b, Pim(tags, 1.0)}});
        }
    return T;
}

std::vector<std::string> component_names() {
    return {"t11", "t~11", "t12", "t~12", "t13", "t~13", "t21", "t~21", "t22"};
}

TForm tform_components(const Signature& sig) {
    require_quantum(sig);
    const int n = sig.tags();
    const Pim j1 = slot_value(sig, 1), j2 = slot_value(sig, 2), J = j1 * j2, one(n, 1.0);
    enum { t11, tt11, t12, tt12, t13, tt13, t21, tt21, t22 };
    TForm T;
    T.tags = n;
    T.iota_mask = sig.nil_mask();
    T.names = component_names();
    T.entry = {
        {{t11, one}, {tt11, kI * J}},     {{t12, j1}, {tt12, -kI * j2}}, {{t13, one}, {tt13, -kI * J}},
        {{t21, j1}, {tt21, kI * j2}},     {{t22, one}},                  {{t21, j1}, {tt21, -kI * j2}},
        {{t13, one}, {tt13, kI * J}},     {{t12, j1}, {tt12, kI * j2}},  {{t11, one}, {tt11, -kI * J}},
    };
    return T;
}

FreeElement substitute(const FreeElement& x, const std::vector<FreeElement>& images) {
    if (static_cast<int>(images.size()) != x.alphabet()) throw AlphabetMismatch("substitute: one image per generator required");
    const int G = images.empty() ? 0 : images[0].alphabet();
    FreeElement out(G, x.tags());
    for (const auto& [m, c] : x.terms()) {
        FreeElement p = FreeElement::constant(G, x.tags(), Pim::monomial(x.tags(), m.mask, c));
        for (auto g : m.word) p = p * images[g];
        out += p;
    }
    return out;
}

RelationSet rtt_relations(const DMat& R, const TForm& T) {
    const int G = T.alphabet(), n = T.tags;
    std::vector<FreeElement> Tx;
    for (int k = 0; k < 9; ++k) Tx.push_back(T.at(k / 3, k % 3));
    // pair(x, y) = T_x T_y
    std::vector<FreeElement> pair(81);
    for (int x = 0; x < 9; ++x)
        for (int y = 0; y < 9; ++y) pair[x * 9 + y] = Tx[x] * Tx[y];
    RelationSet rs;
    rs.alphabet = G;
    rs.tags = n;
    rs.provenance = Provenance::RTT;
    rs.iota_mask = T.iota_mask & ((1u << n) - 1);
    for (int A = 0; A < 9; ++A)
        for (int B = 0; B < 9; ++B) {
            const int i = A / 3, j = A % 3, b1 = B / 3, b2 = B % 3;
            FreeElement e(G, n);
            for (int C = 0; C < 9; ++C) {
                const int k = C / 3, l = C % 3;
                if (!R(A, C).is_zero()) e += R(A, C) * pair[(k * 3 + b1) * 9 + l * 3 + b2];
                if (!R(C, B).is_zero()) e -= R(C, B) * pair[(j * 3 + l) * 9 + i * 3 + k];
            }
            rs.add(std::move(e));
        }
    return rs;
}

RelationSet rtt_relations(const RMatrix& R) { return rtt_relations(R.R, tform_entries(R.sig.tags(), R.sig.nil_mask())); }

RelationSet orthogonality_relations(const DMat& C, const TForm& T) {
    const int G = T.alphabet(), n = T.tags;
    RelationSet rs;
    rs.alphabet = G;
    rs.tags = n;
    rs.provenance = Provenance::Orthogonality;
    rs.iota_mask = T.iota_mask & ((1u << n) - 1);
    for (int a = 0; a < 3; ++a)
        for (int d = 0; d < 3; ++d) {
            FreeElement e1 = FreeElement::constant(G, n, -C(a, d)), e2 = e1;
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    if (C(b, c).is_zero()) continue;
                    e1 += C(b, c) * (T.at(a, b) * T.at(d, c));
                    e2 += C(b, c) * (T.at(b, a) * T.at(c, d));
                }
            rs.add(std::move(e1));
            rs.add(std::move(e2));
        }
    return rs;
}

RelationSet orthogonality_relations(const CMatrix& C) { return orthogonality_relations(C.C, tform_entries(C.sig.tags(), C.sig.nil_mask())); }

FreeElement coproduct(const FreeElement& x) {
    const int G = x.alphabet(), n = x.tags();
    if (G != 9) throw AlphabetMismatch("coproduct acts on the nine-entry alphabet");
    std::vector<FreeElement> d(9, FreeElement(2 * G, n));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                d[i * 3 + k] += free_tensor(FreeElement::generator(G, n, i * 3 + j), FreeElement::generator(G, n, j * 3 + k));
    FreeElement out(2 * G, n);
    for (const auto& [m, c] : x.terms()) {
        FreeElement p(2 * G, n);
        p.add_term(m.mask, {}, c);
        for (auto g : m.word) p = tensor_mul(p, d[g]);
        out += p;
    }
    return out;
}

Pim counit(const FreeElement& x) {
    if (x.alphabet() != 9) throw AlphabetMismatch("counit acts on the nine-entry alphabet");
    Pim out(x.tags(), 0.0);
    for (const auto& [m, c] : x.terms()) {
        bool diag = true;
        for (auto g : m.word) diag = diag && g / 3 == g % 3;
        if (diag) out[m.mask] += c;
    }
    return out;
}

FreeElement antipode(const FreeElement& x, const DMat& C) {
    const int G = x.alphabet(), n = x.tags();
    if (G != 9) throw AlphabetMismatch("antipode acts on the nine-entry alphabet");
    const DMat Ci = dmat_inverse(C);
    std::vector<FreeElement> s(9, FreeElement(G, n));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) {
                    const Pim c = C(a, p) * Ci(q, b);
                    if (!c.is_zero()) s[a * 3 + b] += c * FreeElement::generator(G, n, q * 3 + p);
                }
    FreeElement out(G, n);
    for (const auto& [m, c] : x.terms()) {
        FreeElement p = FreeElement::constant(G, n, Pim::monomial(n, m.mask, c));
        for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) p = p * s[*it];
        out += p;
    }
    return out;
}

FrtSystem build_frt(const RMatrix& R, int closure_degree) {
    FrtSystem f;
    f.R = R;
    f.C = cmatrix(R.sig, R.v);
    f.rtt = rtt_relations(R);
    f.orth = orthogonality_relations(f.C);
    f.all = merge(f.rtt, f.orth);
    f.sys = build_reduction(f.all, closure_degree);
    return f;
}

FrtSystem build_frt(const Signature& sig, cplx v, int closure_degree) { return build_frt(rmatrix3(sig, v), closure_degree); }

static json base_inputs(const Signature& sig, cplx v) {
    return {{"signature", sig.str()}, {"v", format_complex(v)}};
}

Report verify_qybe(const RMatrix& R) {
    Report r;
    r.check = "frt.qybe";
    r.inputs = base_inputs(R.sig, R.v);
    r.residual = qybe_check(R.R);
    r.tolerance = 1e-10;
    return r.finish();
}

static long normal_total(const ReductionSystem& s) { return s.normal_word_count(3); }

Report verify_confluence(const FrtSystem& f) {
    Report r;
    r.check = "frt.confluence";
    r.inputs = base_inputs(f.R.sig, f.R.v);
    const ConfluenceResult cr = confluence_check(f.sys, 3, 1e-9);
    const ReductionSystem ref = build_reduction(merge(rtt_relations(rmatrix3(f.R.sig, 0.0)),
                                                      orthogonality_relations(cmatrix(f.R.sig, 0.0))),
                                                3);
    const ReductionSystem naive = build_reduction(f.all, 2);
    const ConfluenceResult nc = confluence_check(naive, 3, 1e-9);
    const long normal = normal_total(f.sys), normal0 = normal_total(ref);
    r.residual = cr.max_discrepancy;
    r.tolerance = 1e-9;
    json failing = json::array();
    for (std::size_t k = 0; k < cr.failing.size() && k < 10; ++k) {
        json w = json::array();
        for (auto g : cr.failing[k].first) w.push_back(tform_entries(0).names[g]);
        failing.push_back({{"word", w}, {"discrepancy", cr.failing[k].second}});
    }
    r.detail = {{"words", cr.words},
                {"failing_words", cr.failing.size()},
                {"failing", failing},
                {"pivots", f.sys.rank()},
                {"rules", f.sys.rules.size()},
                {"normal_monomials_deg3", normal},
                {"normal_monomials_deg3_at_v0", normal0},
                {"closure2_discrepancy", nc.max_discrepancy}};
    r.conditions = {{"flat", normal == normal0}};
    return r.finish();
}

Report verify_antipode(const FrtSystem& f) {
    Report r;
    r.check = "frt.antipode";
    r.inputs = base_inputs(f.R.sig, f.R.v);
    const int n = f.R.sig.tags();
    std::vector<FreeElement> S;
    for (int g = 0; g < 9; ++g) S.push_back(antipode(FreeElement::generator(9, n, g), f.C.C));
    auto t = [&](int a, int b) { return FreeElement::generator(9, n, a * 3 + b); };
    double prod = 0;
    json bad = json::array();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            FreeElement st = FreeElement::constant(9, n, Pim(n, a == b ? -1.0 : 0.0)), ts = st;
            for (int c = 0; c < 3; ++c) {
                st += S[a * 3 + c] * t(c, b);
                ts += t(a, c) * S[c * 3 + b];
            }
            const double e = std::max(reduce(st, f.sys).max_abs(), reduce(ts, f.sys).max_abs());
            if (e > 1e-9) bad.push_back({{"entry", std::to_string(a + 1) + std::to_string(b + 1)}, {"residual", e}});
            prod = std::max(prod, e);
        }
    std::vector<FreeElement> images;
    for (const auto& rel : f.all.relations) images.push_back(reduce(antipode(rel, f.C.C), f.sys));
    const double rel = max_abs_all(images);
    r.residual = std::max(prod, rel);
    r.tolerance = 1e-9;
    r.detail = {{"inverse_residual", prod}, {"relations_residual", rel}, {"failing_entries", bad}};
    return r.finish();
}

Report verify_coproduct(const FrtSystem& f) {
    Report r;
    r.check = "frt.coproduct";
    r.inputs = base_inputs(f.R.sig, f.R.v);
    double worst = 0;
    int failing = 0;
    for (const auto& rel : f.all.relations) {
        const double e = reduce_tensor(coproduct(rel), f.sys).max_abs();
        if (e > 1e-9) ++failing;
        worst = std::max(worst, e);
    }
    r.residual = worst;
    r.tolerance = 1e-9;
    r.detail = {{"relations", f.all.relations.size()}, {"failing_relations", failing}};
    return r.finish();
}

Report verify_counit(const FrtSystem& f) {
    Report r;
    r.check = "frt.counit";
    r.inputs = base_inputs(f.R.sig, f.R.v);
    double worst = 0;
    for (const auto& rel : f.all.relations) worst = std::max(worst, counit(rel).max_abs());
    r.residual = worst;
    r.tolerance = 0;
    return r.finish();
}

Report verify_contraction_transform(const Signature& sig, cplx v) {
    require_quantum(sig);
    const int n = sig.tags();
    const Pim j1 = slot_value(sig, 1), j2 = slot_value(sig, 2), J = j1 * j2, one(n, 1.0), z = J * v;

    const TForm Tj = tform_components(sig);
    const RelationSet direct = merge(rtt_relations(rmatrix3(sig, v).R, Tj), orthogonality_relations(cmatrix(sig, v).C, Tj));

    const TForm Tq = tform_components(Signature({Slot::One, Slot::One}));
    const RelationSet primed = merge(rtt_relations(rmatrix_q(z), Tq), orthogonality_relations(cmatrix_q(3, z), Tq));
    const std::vector<Pim> m = {one, J, j1, j2, one, J, j1, j2, one};
    std::vector<FreeElement> images;
    for (int g = 0; g < 9; ++g) images.push_back(m[g] * FreeElement::generator(9, n, g));
    RelationSet mapped;
    mapped.alphabet = 9;
    mapped.tags = n;
    mapped.iota_mask = sig.nil_mask();
    for (const auto& rel : primed.relations) mapped.add(substitute(rel, images));

    const ReductionSystem sd = build_reduction(direct, 2), sm = build_reduction(mapped, 2);
    double fwd = 0, back = 0;
    for (const auto& x : mapped.relations) fwd = std::max(fwd, normal_form(x, sd).max_abs());
    for (const auto& x : direct.relations) back = std::max(back, normal_form(x, sm).max_abs());

    Report r;
    r.check = "frt.contraction";
    r.inputs = base_inputs(sig, v);
    r.residual = std::max(fwd, back);
    r.tolerance = 1e-9;
    r.detail = {{"mapped_into_direct", fwd}, {"direct_into_mapped", back}, {"rank_direct", sd.rank()}, {"rank_mapped", sm.rank()}};
    r.conditions = {{"equal_rank", sd.rank() == sm.rank()}};
    return r.finish();
}

int rtt_relation_count(const RMatrix& R) { return build_reduction(rtt_relations(R), 2).rank(); }

std::vector<Report> verify_frt(const Signature& sig, const std::vector<cplx>& vs) {
    std::vector<Report> out;
    for (cplx v : vs) {
        const FrtSystem f = build_frt(sig, v);
        out.push_back(verify_qybe(f.R));
        Report c = verify_confluence(f);
        c.detail["rtt_relation_count"] = rtt_relation_count(f.R);
        out.push_back(c);
        out.push_back(verify_antipode(f));
        out.push_back(verify_coproduct(f));
        out.push_back(verify_counit(f));
        out.push_back(verify_contraction_transform(sig, v));
    }
    return out;
}

}  // namespace ckq
