#include "ckq/sow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ckq {

namespace {

const cplx kI(0, 1);

std::vector<cplx> cos_taylor(int terms) {
    std::vector<cplx> t(terms);
    double f = 1;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) f *= (2.0 * k - 1) * (2.0 * k);
        t[k] = (k % 2 ? -1.0 : 1.0) / f;
    }
    return t;
}

std::vector<cplx> sinc_taylor(int terms) {
    std::vector<cplx> t(terms);
    double f = 1;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) f *= (2.0 * k) * (2.0 * k + 1);
        t[k] = (k % 2 ? -1.0 : 1.0) / f;
    }
    return t;
}

// tan x / x in powers of x^2
std::vector<cplx> tanc_taylor(int terms) {
    std::vector<cplx> t = taylor_thc(terms);
    for (int k = 1; k < terms; k += 2) t[k] = -t[k];
    return t;
}

int count_x02(const Word& w) { return static_cast<int>(std::count(w.begin(), w.end(), X02)); }

void add_into(std::map<Sow::Key, WSeries>& m, const Sow::Key& k, const WSeries& c) {
    if (c.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
}

}  // namespace

// ---------------- WSeries ----------------

WSeries::WSeries(int order, int tags) : d_(order), n_(tags), c_(std::size_t(order + 1) << tags, cplx(0)) {}

WSeries WSeries::constant(int order, const Pim& c) {
    WSeries s(order, c.n());
    for (unsigned m = 0; m < s.S(); ++m) s.at(0, m) = c[m];
    return s;
}

WSeries WSeries::monomial(int order, int tags, int k, cplx c) {
    WSeries s(order, tags);
    if (k <= order) s.at(k, 0) = c;
    return s;
}

WSeries WSeries::even(int order, const std::vector<cplx>& taylor, const Pim& J, cplx alpha, int shift) {
    WSeries s(order, J.n());
    Pim Jk(J.n(), 1.0);
    cplx ak = 1.0;
    for (int k = 0; 2 * k + shift <= order; ++k) {
        if (k >= static_cast<int>(taylor.size())) throw std::invalid_argument("WSeries::even: too few Taylor terms");
        const Pim c = (taylor[k] * ak) * Jk;
        for (unsigned m = 0; m < s.S(); ++m) s.at(2 * k + shift, m) = c[m];
        Jk = Jk * J * J;
        ak *= alpha * alpha;
    }
    return s;
}

Pim WSeries::coeff(int k) const {
    Pim p(n_);
    for (unsigned m = 0; m < S(); ++m) p[m] = at(k, m);
    return p;
}

bool WSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](cplx z) { return z == cplx(0); });
}

double WSeries::max_abs() const {
    double m = 0;
    for (cplx z : c_) m = std::max(m, std::abs(z));
    return m;
}

WSeries& WSeries::operator+=(const WSeries& o) {
    if (o.d_ != d_ || o.n_ != n_) throw std::invalid_argument("WSeries: order or tag mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

WSeries& WSeries::operator-=(const WSeries& o) {
    if (o.d_ != d_ || o.n_ != n_) throw std::invalid_argument("WSeries: order or tag mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

WSeries& WSeries::operator*=(cplx s) {
    for (auto& z : c_) z *= s;
    return *this;
}

WSeries& WSeries::operator*=(const Pim& p) { return *this = *this * constant(d_, p); }

WSeries operator*(const WSeries& a, const WSeries& b) {
    if (a.d_ != b.d_ || a.n_ != b.n_) throw std::invalid_argument("WSeries: order or tag mismatch");
    WSeries r(a.d_, a.n_);
    const unsigned S = static_cast<unsigned>(a.S());
    for (int k1 = 0; k1 <= a.d_; ++k1)
        for (unsigned m1 = 0; m1 < S; ++m1) {
            const cplx x = a.at(k1, m1);
            if (x == cplx(0)) continue;
            for (int k2 = 0; k1 + k2 <= a.d_; ++k2)
                for (unsigned m2 = 0; m2 < S; ++m2) {
                    if (m1 & m2) continue;
                    const cplx y = b.at(k2, m2);
                    if (y != cplx(0)) r.at(k1 + k2, m1 | m2) += x * y;
                }
        }
    return r;
}

WSeries WSeries::sqrt() const {
    const Pim a0 = coeff(0);
    if (!a0.is_unit()) throw NotInvertible("WSeries::sqrt: leading coefficient is not a unit");
    std::vector<Pim> s(d_ + 1, Pim(n_));
    s[0] = pim_apply(kernels::sqrt(), a0);
    const Pim inv2 = pim_inv(2.0 * s[0]);
    for (int k = 1; k <= d_; ++k) {
        Pim acc = coeff(k);
        for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
        s[k] = acc * inv2;
    }
    WSeries r(d_, n_);
    for (int k = 0; k <= d_; ++k)
        for (unsigned m = 0; m < S(); ++m) r.at(k, m) = s[k][m];
    return r;
}

std::string WSeries::str(int digits) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= d_; ++k) {
        const Pim c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str(digits) << ")";
        if (k > 0) os << "*w^" << k;
    }
    return first ? "0" : os.str();
}

// ---------------- Sow ----------------

std::string sow_word_str(const Word& w) {
    static const char* names[] = {"X01", "X02", "X12"};
    if (w.empty()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += " ";
        s += names[w[i]];
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

double Sow::max_abs() const {
    double m = 0;
    for (const auto& [k, c] : terms) m = std::max(m, c.max_abs());
    return m;
}

std::string Sow::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << "\n";
        first = false;
        os << "[" << c.str() << "] ";
        for (std::size_t b = 0; b < k.size(); ++b) os << (b ? " (x) " : "") << sow_word_str(k[b]);
    }
    return first ? "0" : os.str();
}

// ---------------- SowEngine ----------------

SowEngine::SowEngine(const Signature& sig, int d_w, int d_x) : sig_(sig), dw_(d_w), dx_(d_x), n_(sig.tags()) {
    if (!sig.quantum_allowed() || sig.N() != 3)
        throw std::invalid_argument("so_w(3;j) takes a two-slot signature with j_k in {1, iota_k}");
    if (d_w < 0 || d_x < 0) throw std::invalid_argument("truncation orders must be non-negative");
    j1_ = slot_value(sig, 1);
    j2_ = slot_value(sig, 2);
    J_ = j1_ * j2_;
}

WSeries SowEngine::scalar(cplx c) const { return WSeries::monomial(dw_, n_, 0, c); }
WSeries SowEngine::scalar(const Pim& c) const { return WSeries::constant(dw_, c); }

Sow SowEngine::one(int banks) const {
    Sow s;
    s.banks = banks;
    s.terms.emplace(Sow::Key(banks), scalar(1.0));
    return s;
}

Sow SowEngine::gen(Letter x) const { return word(Word{x}, scalar(1.0)); }

Sow SowEngine::word(const Word& w, const WSeries& c) const {
    Sow s;
    if (!c.is_zero()) s.terms.emplace(Sow::Key{w}, c);
    return s;
}

Sow SowEngine::exp_x02(cplx c) const {
    Sow s;
    cplx f = 1.0;
    for (int k = 0; k <= dw_; ++k) {
        if (k > 0) f *= c / static_cast<double>(k);
        s.terms.emplace(Sow::Key{Word(k, X02)}, WSeries::monomial(dw_, n_, k, f));
    }
    return s;
}

Sow SowEngine::sinh_x02_over_w() const {
    Sow s;
    double f = 1;
    for (int k = 0; 2 * k <= dw_; ++k) {
        if (k > 0) f *= (2.0 * k) * (2.0 * k + 1);
        s.terms.emplace(Sow::Key{Word(2 * k + 1, X02)}, WSeries::monomial(dw_, n_, 2 * k, 1.0 / f));
    }
    return s;
}

Sow SowEngine::add(const Sow& a, const Sow& b, cplx s) const {
    if (!a.terms.empty() && !b.terms.empty() && a.banks != b.banks) throw std::invalid_argument("Sow: bank mismatch");
    Sow r = a;
    if (a.terms.empty()) r.banks = b.banks;
    for (const auto& [k, c] : b.terms) add_into(r.terms, k, s * c);
    return r;
}

Sow SowEngine::scale(const Sow& a, const WSeries& c) const {
    Sow r;
    r.banks = a.banks;
    for (const auto& [k, x] : a.terms) add_into(r.terms, k, x * c);
    return r;
}

const std::map<Word, WSeries>& SowEngine::normal_word(const Word& w, Descent s) const {
    auto& memo = memo_[s == Descent::First ? 0 : 1];
    if (auto it = memo.find(w); it != memo.end()) return it->second;

    int p = -1;
    const int L = static_cast<int>(w.size());
    if (s == Descent::First) {
        for (int i = 0; i + 1 < L && p < 0; ++i)
            if (w[i] > w[i + 1]) p = i;
    } else {
        for (int i = L - 2; i >= 0 && p < 0; --i)
            if (w[i] > w[i + 1]) p = i;
    }

    std::map<Word, WSeries> out;
    if (p < 0) {
        out.emplace(w, scalar(1.0));
    } else {
        auto emit = [&](const Word& repl, const WSeries& c) {
            if (c.is_zero()) return;
            Word nw(w.begin(), w.begin() + p);
            nw.insert(nw.end(), repl.begin(), repl.end());
            nw.insert(nw.end(), w.begin() + p + 2, w.end());
            const auto& sub = normal_word(nw, s);
            for (const auto& [k, v] : sub) {
                WSeries prod = c * v;
                if (prod.is_zero()) continue;
                auto it = out.find(k);
                if (it == out.end())
                    out.emplace(k, std::move(prod));
                else
                    it->second += prod;
            }
        };
        const std::uint8_t a = w[p], b = w[p + 1];
        emit({b, a}, scalar(1.0));
        if (a == X02 && b == X01) emit({X12}, scalar(-(j1_ * j1_)));
        if (a == X12 && b == X02) emit({X01}, scalar(-(j2_ * j2_)));
        if (a == X12 && b == X01) {
            double f = 1;
            for (int k = 0; 2 * k <= dw_; ++k) {
                if (k > 0) f *= (2.0 * k) * (2.0 * k + 1);
                emit(Word(2 * k + 1, X02), WSeries::monomial(dw_, n_, 2 * k, 1.0 / f));
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return memo.emplace(w, std::move(out)).first->second;
}

Sow SowEngine::normalize(const Sow& x, Descent s) const {
    Sow r;
    r.banks = x.banks;
    for (const auto& [key, c] : x.terms) {
        std::vector<std::pair<Sow::Key, WSeries>> partial = {{Sow::Key{}, c}};
        for (const auto& w : key) {
            const auto& nf = normal_word(w, s);
            std::vector<std::pair<Sow::Key, WSeries>> next;
            for (const auto& [pk, pc] : partial)
                for (const auto& [nw, nc] : nf) {
                    WSeries prod = pc * nc;
                    if (prod.is_zero()) continue;
                    Sow::Key k = pk;
                    k.push_back(nw);
                    next.emplace_back(std::move(k), std::move(prod));
                }
            partial = std::move(next);
        }
        for (const auto& [k, v] : partial) add_into(r.terms, k, v);
    }
    return r;
}

Sow SowEngine::mul(const Sow& a, const Sow& b) const {
    Sow raw;
    raw.banks = a.banks;
    if (!a.terms.empty() && !b.terms.empty() && a.banks != b.banks) throw std::invalid_argument("Sow: bank mismatch");
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            Sow::Key k(ka.size());
            for (std::size_t i = 0; i < ka.size(); ++i) {
                k[i] = ka[i];
                k[i].insert(k[i].end(), kb[i].begin(), kb[i].end());
            }
            add_into(raw.terms, k, ca * cb);
        }
    return normalize(raw);
}

Sow SowEngine::tensor(const Sow& a, const Sow& b) const {
    Sow r;
    r.banks = a.banks + b.banks;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            Sow::Key k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            add_into(r.terms, k, ca * cb);
        }
    return r;
}

double SowEngine::project(Sow& x) const {
    double dropped = 0;
    for (auto it = x.terms.begin(); it != x.terms.end();) {
        const bool over = std::any_of(it->first.begin(), it->first.end(), [&](const Word& w) { return count_x02(w) > dx_; });
        if (over) {
            dropped = std::max(dropped, it->second.max_abs());
            it = x.terms.erase(it);
        } else {
            ++it;
        }
    }
    return dropped;
}

Sow SowEngine::letter_coproduct(std::uint8_t x) const {
    const Sow g = gen(static_cast<Letter>(x)), e = one();
    if (x == X02) return add(tensor(e, g), tensor(g, e));
    return add(tensor(exp_x02(-0.5), g), tensor(g, exp_x02(0.5)));
}

Sow SowEngine::coproduct(const Sow& x) const {
    Sow out;
    out.banks = 2;
    Sow d[3] = {letter_coproduct(X01), letter_coproduct(X02), letter_coproduct(X12)};
    for (const auto& [k, c] : x.terms) {
        Sow acc = one(2);
        for (auto letter : k[0]) acc = mul(acc, d[letter]);
        out = add(out, scale(acc, c));
    }
    return out;
}

Sow SowEngine::coproduct_bank(const Sow& x, int b) const {
    Sow out;
    out.banks = x.banks + 1;
    for (const auto& [k, c] : x.terms) {
        const Sow dw = coproduct(word(k[b], scalar(1.0)));
        for (const auto& [dk, dc] : dw.terms) {
            Sow::Key nk(k.begin(), k.begin() + b);
            nk.push_back(dk[0]);
            nk.push_back(dk[1]);
            nk.insert(nk.end(), k.begin() + b + 1, k.end());
            add_into(out.terms, nk, c * dc);
        }
    }
    return out;
}

Sow SowEngine::counit_bank(const Sow& x, int b) const {
    Sow out;
    out.banks = x.banks - 1;
    for (const auto& [k, c] : x.terms) {
        if (!k[b].empty()) continue;
        Sow::Key nk = k;
        nk.erase(nk.begin() + b);
        add_into(out.terms, nk, c);
    }
    return out;
}

Sow SowEngine::letter_antipode(std::uint8_t x) const {
    if (x == X02) return scale(gen(X02), scalar(-1.0));
    const WSeries c = WSeries::even(dw_, cos_taylor(dw_ / 2 + 1), J_, 0.5);
    const WSeries s = 0.5 * WSeries::even(dw_, sinc_taylor(dw_ / 2 + 1), J_, 0.5, 1);  // J^-1 sin(Jw/2)
    if (x == X01) return add(scale(gen(X01), -1.0 * c), scale(gen(X12), s * scalar(j1_ * j1_)));
    return add(scale(gen(X12), -1.0 * c), scale(gen(X01), s * scalar(j2_ * j2_)), -1.0);
}

Sow SowEngine::antipode(const Sow& x) const {
    Sow out;
    out.banks = 1;
    Sow s[3] = {letter_antipode(X01), letter_antipode(X02), letter_antipode(X12)};
    for (const auto& [k, c] : x.terms) {
        Sow acc = one();
        for (auto it = k[0].rbegin(); it != k[0].rend(); ++it) acc = mul(acc, s[*it]);
        out = add(out, scale(acc, c));
    }
    return out;
}

Sow SowEngine::antipode_bank(const Sow& x, int b) const {
    Sow out;
    out.banks = x.banks;
    for (const auto& [k, c] : x.terms) {
        const Sow sw = antipode(word(k[b], scalar(1.0)));
        for (const auto& [sk, sc] : sw.terms) {
            Sow::Key nk = k;
            nk[b] = sk[0];
            add_into(out.terms, nk, c * sc);
        }
    }
    return out;
}

Sow SowEngine::multiply_banks(const Sow& x) const {
    if (x.banks != 2) throw std::invalid_argument("multiply_banks expects two banks");
    Sow raw;
    raw.banks = 1;
    for (const auto& [k, c] : x.terms) {
        Word w = k[0];
        w.insert(w.end(), k[1].begin(), k[1].end());
        add_into(raw.terms, Sow::Key{w}, c);
    }
    return normalize(raw);
}

std::vector<Sow> SowEngine::relations() const {
    const WSeries one_c = scalar(1.0);
    Sow r1 = add(word({X01, X02}, one_c), word({X02, X01}, one_c), -1.0);
    r1 = add(r1, word({X12}, scalar(j1_ * j1_)), -1.0);
    Sow r2 = add(word({X02, X12}, one_c), word({X12, X02}, one_c), -1.0);
    r2 = add(r2, word({X01}, scalar(j2_ * j2_)), -1.0);
    Sow r3 = add(word({X12, X01}, one_c), word({X01, X12}, one_c), -1.0);
    r3 = add(r3, sinh_x02_over_w(), -1.0);
    return {r1, r2, r3};
}

std::vector<std::string> SowEngine::relation_names() const { return {"[X01,X02]", "[X02,X12]", "[X12,X01]"}; }

// ---------------- checks ----------------

SowResidual sow_hopf_residuals(const SowEngine& e) {
    SowResidual r;
    auto record = [&](const std::string& name, Sow x) {
        r.overflow = std::max(r.overflow, e.project(x));
        const double m = x.max_abs();
        r.parts.emplace_back(name, m);
        r.residual = std::max(r.residual, m);
    };
    const auto rels = e.relations();
    const auto names = e.relation_names();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        record("coproduct " + names[i], e.coproduct(rels[i]));
        record("antipode " + names[i], e.antipode(rels[i]));
    }
    const char* gnames[] = {"X01", "X02", "X12"};
    for (std::uint8_t g = 0; g < 3; ++g) {
        const Sow x = e.gen(static_cast<Letter>(g));
        const Sow dx = e.coproduct(x);
        const std::string n = gnames[g];
        record("m(S x id)D " + n, e.multiply_banks(e.antipode_bank(dx, 0)));
        record("m(id x S)D " + n, e.multiply_banks(e.antipode_bank(dx, 1)));
        record("coassociativity " + n, e.add(e.coproduct_bank(dx, 0), e.coproduct_bank(dx, 1), -1.0));
        record("counit left " + n, e.add(e.counit_bank(dx, 0), x, -1.0));
        record("counit right " + n, e.add(e.counit_bank(dx, 1), x, -1.0));
    }
    return r;
}

SowResidual sow_iso_residuals(const SowEngine& e, cplx phase) {
    const int d = e.d_w(), n = e.tags();
    const Pim& J = e.J();
    const Signature& sig = e.signature();
    const Pim j1 = slot_value(sig, 1), j2 = slot_value(sig, 2);
    const WSeries w = WSeries::monomial(d, n, 1, 1.0);
    const WSeries sinc = WSeries::even(d, sinc_taylor(d / 2 + 2), J, 1.0);
    const WSeries E = phase * (w * (2.0 * sinc).sqrt());
    const WSeries JE = e.scalar(J) * E;

    const Sow l11 = e.exp_x02(-1.0), h = e.exp_x02(-0.5);
    const Sow l12 = e.scale(e.mul(e.gen(X01), h), JE);
    const Sow lt = e.scale(e.mul(e.gen(X12), h), JE);

    const WSeries cosJ = WSeries::even(d, cos_taylor(d / 2 + 1), J, 1.0);
    const WSeries sJ = WSeries::even(d, sinc_taylor(d / 2 + 1), J, 1.0, 1);   // J^-1 sin Jw
    const WSeries hJ = e.scalar(J * J) * WSeries::even(d, sinc_taylor(d / 2 + 1), J, 0.5, 1);  // 2J sin(Jw/2)
    const WSeries tJ = 0.5 * WSeries::even(d, tanc_taylor(d / 2 + 1), J, 0.5, 1);            // J^-1 tan(Jw/2)

    auto M = [&](const Sow& a, const Sow& b) { return e.mul(a, b); };
    const Sow r1 = e.add(e.add(e.scale(M(l11, l12), cosJ), M(l12, l11), -1.0), e.scale(M(l11, lt), e.scalar(j1 * j1) * sJ), -1.0);
    const Sow r2 = e.add(e.add(e.scale(M(l11, lt), cosJ), M(lt, l11), -1.0), e.scale(M(l11, l12), e.scalar(j2 * j2) * sJ));
    Sow r3 = e.add(M(l12, lt), M(lt, l12), -1.0);
    r3 = e.add(r3, e.scale(e.add(e.one(), M(l11, l11), -1.0), hJ), -1.0);
    const Sow quad = e.add(e.scale(M(l12, l12), e.scalar(j2 * j2)), e.scale(M(lt, lt), e.scalar(j1 * j1)));
    r3 = e.add(r3, e.scale(quad, tJ));

    SowResidual r;
    const char* names[] = {"l11 l12 relation", "l11 l~12 relation", "[l12, l~12] relation"};
    Sow rs[3] = {r1, r2, r3};
    for (int i = 0; i < 3; ++i) {
        r.overflow = std::max(r.overflow, e.project(rs[i]));
        const double m = rs[i].max_abs();
        r.parts.emplace_back(names[i], m);
        r.residual = std::max(r.residual, m);
    }
    return r;
}

double sow_diamond(const SowEngine& e, int length) {
    std::vector<Word> words{{}};
    for (int l = 0; l < length; ++l) {
        std::vector<Word> next;
        for (const auto& w : words)
            for (std::uint8_t g = 0; g < 3; ++g) {
                Word x = w;
                x.push_back(g);
                next.push_back(x);
            }
        words = std::move(next);
    }
    double worst = 0;
    for (const auto& w : words) {
        const Sow x = e.word(w, e.scalar(1.0));
        worst = std::max(worst, e.add(e.normalize(x, Descent::First), e.normalize(x, Descent::Last), -1.0).max_abs());
    }
    return worst;
}

namespace {

json parts_json(const SowResidual& r) {
    json p = json::object();
    for (const auto& [k, v] : r.parts) p[k] = v;
    return p;
}

bool contracted(const Signature& sig) { return sig.nil_mask() != 0; }

}  // namespace

Report verify_sow_hopf(const Signature& sig, int trunc) {
    Stopwatch sw;
    const SowEngine e(sig, trunc, trunc);
    const SowResidual r = sow_hopf_residuals(e);
    Report rep;
    rep.check = "dual.sow_hopf";
    rep.inputs = {{"signature", sig.str()}, {"truncation", trunc}};
    rep.residual = r.residual;
    rep.tolerance = 1e-9;
    const double diamond = sow_diamond(e, 3);
    rep.conditions = {{"diamond", diamond <= 1e-12}};
    rep.detail = {{"parts", parts_json(r)}, {"overflow", r.overflow}, {"diamond", diamond}};
    rep.wall_ms = sw.ms();
    return rep.finish();
}

Report verify_duality_isomorphism(const Signature& sig, int trunc) {
    Stopwatch sw;
    const SowEngine e(sig, trunc, trunc);
    const SowResidual r = sow_iso_residuals(e);
    Report rep;
    rep.check = "dual.iso";
    rep.inputs = {{"signature", sig.str()}, {"truncation", trunc}};
    rep.residual = r.residual;
    rep.tolerance = 1e-8;
    // identical products reach each coefficient in different summation orders, so "zero" means a few ulp
    if (contracted(sig)) rep.conditions = {{"structural_zero", r.residual <= 64 * std::numeric_limits<double>::epsilon()}};
    rep.detail = {{"parts", parts_json(r)}, {"overflow", r.overflow}};
    rep.wall_ms = sw.ms();
    return rep.finish();
}

Report verify_truncation_decay(const std::string& which, const Signature& sig, const std::vector<int>& orders) {
    constexpr double kFloor = 1e-13;
    if (which != "iso" && which != "sow_hopf") throw std::invalid_argument("unknown decay target: " + which);
    Report rep;
    rep.check = "dual." + which + "_decay";
    rep.inputs = {{"signature", sig.str()}, {"truncations", orders}};
    json res = json::array();
    std::vector<double> values;
    for (int d : orders) {
        const Report r = which == "iso" ? verify_duality_isomorphism(sig, d) : verify_sow_hopf(sig, d);
        values.push_back(r.residual);
        res.push_back({{"truncation", d}, {"residual", r.residual}});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i) monotone = monotone && values[i] <= std::max(values[i - 1], kFloor);
    rep.residual = *std::max_element(values.begin(), values.end());
    rep.tolerance = which == "iso" ? 1e-8 : 1e-9;
    rep.conditions = {{"non_increasing", monotone}};
    rep.detail = {{"residuals", res}, {"round_off_floor", kFloor}};
    return rep.finish();
}

}  // namespace ckq
