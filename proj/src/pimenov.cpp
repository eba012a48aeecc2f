#include "ckq/pimenov.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

namespace ckq {

namespace {

void check_n(int n) {
    if (n < 0 || n > kMaxTags) throw std::invalid_argument("tag count out of range [0,8]: " + std::to_string(n));
}

void same_n(const Pim& a, const Pim& b) {
    if (a.n() != b.n())
        throw TagMismatch("tag count mismatch: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
}

}  // namespace

Pim::Pim(int n, cplx a0) : n_(n) {
    check_n(n);
    c_.assign(std::size_t(1) << n, cplx(0));
    c_[0] = a0;
}

Pim Pim::tag(int n, int k) {
    if (k < 1 || k > n) throw std::out_of_range("tag index out of range: i" + std::to_string(k));
    return monomial(n, 1u << (k - 1));
}

Pim Pim::monomial(int n, unsigned mask, cplx c) {
    Pim p(n);
    if (mask >= p.size()) throw std::out_of_range("subset mask out of range");
    p.c_[0] = 0;
    p.c_[mask] = c;
    return p;
}

bool Pim::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](cplx z) { return z == cplx(0); });
}

unsigned Pim::support_tags() const {
    unsigned m = 0;
    for (unsigned s = 0; s < c_.size(); ++s)
        if (c_[s] != cplx(0)) m |= s;
    return m;
}

double Pim::max_abs() const {
    double m = 0;
    for (auto z : c_) m = std::max(m, std::abs(z));
    return m;
}

Pim& Pim::operator+=(const Pim& o) {
    same_n(*this, o);
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] += o.c_[s];
    return *this;
}

Pim& Pim::operator-=(const Pim& o) {
    same_n(*this, o);
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] -= o.c_[s];
    return *this;
}

Pim& Pim::operator*=(cplx s) {
    for (auto& z : c_) z *= s;
    return *this;
}

Pim Pim::operator-() const {
    Pim r = *this;
    r *= -1.0;
    return r;
}

Pim pim_mul(const Pim& a, const Pim& b) {
    same_n(a, b);
    Pim r(a.n(), 0.0);
    const unsigned sz = static_cast<unsigned>(a.size());
    for (unsigned A = 0; A < sz; ++A) {
        if (a[A] == cplx(0)) continue;
        const unsigned rest = (sz - 1) & ~A;
        // iterate submasks of the complement only: overlapping subsets never touch the result
        for (unsigned B = rest;; B = (B - 1) & rest) {
            if (b[B] != cplx(0)) r[A | B] += a[A] * b[B];
            if (B == 0) break;
        }
    }
    return r;
}

Pim pim_inv(const Pim& a) {
    if (!a.is_unit()) throw NotInvertible("element with zero scalar part is not invertible: " + a.str());
    const cplx a0 = a.scalar();
    Pim eps = a * (1.0 / a0);
    eps[0] = 0;
    eps = -eps;
    Pim term(a.n(), 1.0), sum(a.n(), 1.0);
    for (int k = 1; k <= a.n(); ++k) {
        term = term * eps;
        if (term.is_zero()) break;
        sum += term;
    }
    return sum * (1.0 / a0);
}

double max_diff(const Pim& a, const Pim& b) {
    same_n(a, b);
    double m = 0;
    for (unsigned s = 0; s < a.size(); ++s) m = std::max(m, std::abs(a[s] - b[s]));
    return m;
}

Pim pim_pow(const Pim& a, int k) {
    if (k < 0) return pim_pow(pim_inv(a), -k);
    Pim r(a.n(), 1.0);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

std::string format_complex(cplx z, int digits) {
    char buf[96];
    double re = z.real(), im = z.imag();
    if (re == 0) re = 0;  // drop negative zero
    if (im == 0) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, re);
    } else if (re == 0) {
        std::snprintf(buf, sizeof buf, "%.*gj", digits, im);
    } else {
        std::snprintf(buf, sizeof buf, "%.*g%+.*gj", digits, re, digits, im);
    }
    return buf;
}

std::string Pim::str(int digits) const {
    std::string out;
    for (unsigned s = 0; s < c_.size(); ++s) {
        cplx z = c_[s];
        if (z == cplx(0)) continue;
        std::string coef;
        bool neg = false;
        if (z.imag() == 0) {
            neg = z.real() < 0;
            coef = format_complex(neg ? -z : z, digits);
        } else {
            coef = "(" + format_complex(z, digits) + ")";
        }
        std::string mono;
        for (int k = 0; k < n_; ++k)
            if (s >> k & 1u) mono += "*i" + std::to_string(k + 1);
        std::string t = (s != 0 && coef == "1") ? mono.substr(1) : coef + mono;
        if (out.empty())
            out = neg ? "-" + t : t;
        else
            out += (neg ? " - " : " + ") + t;
    }
    return out.empty() ? "0" : out;
}

// ---- kernels ----

namespace kernels {

AnalyticKernel exp() {
    return {"exp", [](int, cplx a) { return std::exp(a); }};
}

AnalyticKernel sin() {
    return {"sin", [](int r, cplx a) {
                switch (r % 4) {
                    case 0: return std::sin(a);
                    case 1: return std::cos(a);
                    case 2: return -std::sin(a);
                    default: return -std::cos(a);
                }
            }};
}

AnalyticKernel cos() {
    return {"cos", [](int r, cplx a) {
                switch (r % 4) {
                    case 0: return std::cos(a);
                    case 1: return -std::sin(a);
                    case 2: return -std::cos(a);
                    default: return std::sin(a);
                }
            }};
}

AnalyticKernel sinh() {
    return {"sinh", [](int r, cplx a) { return r % 2 ? std::cosh(a) : std::sinh(a); }};
}

AnalyticKernel cosh() {
    return {"cosh", [](int r, cplx a) { return r % 2 ? std::sinh(a) : std::cosh(a); }};
}

AnalyticKernel log() {
    return {"log", [](int r, cplx a) {
                if (a == cplx(0)) throw std::domain_error("log kernel: derivative unavailable at 0");
                if (r == 0) return std::log(a);
                double f = 1;
                for (int k = 2; k < r; ++k) f *= k;
                return (r % 2 ? 1.0 : -1.0) * f / std::pow(a, r);
            }};
}

AnalyticKernel sqrt() {
    return {"sqrt", [](int r, cplx a) {
                if (a == cplx(0) && r > 0) throw std::domain_error("sqrt kernel: derivative unavailable at 0");
                cplx c = 1;
                for (int k = 0; k < r; ++k) c *= 0.5 - k;
                return c * std::sqrt(a) / std::pow(a, r);
            }};
}

namespace {

// f^{(r)}(x) for f(x) = sum_k coef(k) x^k, summed until negligible
AnalyticKernel from_coeffs(std::string name, std::function<cplx(int)> coef, int max_terms) {
    return {std::move(name), [coef, max_terms](int r, cplx x) {
                cplx sum = 0;
                int quiet = 0;
                for (int k = r; k < r + max_terms; ++k) {
                    cplx fall = 1;
                    for (int i = 0; i < r; ++i) fall *= double(k - i);
                    cplx t = coef(k) * fall * std::pow(x, k - r);
                    sum += t;
                    if (std::abs(t) <= 1e-18 * std::max(1.0, std::abs(sum))) {
                        if (++quiet >= 3) break;
                    } else {
                        quiet = 0;
                    }
                }
                return sum;
            }};
}

double inv_fact(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f /= i;
    return f;
}

}  // namespace

AnalyticKernel series(std::string name, std::vector<cplx> taylor) {
    auto t = std::make_shared<std::vector<cplx>>(std::move(taylor));
    int terms = static_cast<int>(t->size());
    return from_coeffs(std::move(name), [t](int k) { return k < int(t->size()) ? (*t)[k] : cplx(0); }, terms);
}

AnalyticKernel shc_sq() {
    return from_coeffs("shc", [](int k) { return cplx(inv_fact(2 * k + 1)); }, 200);
}

AnalyticKernel ch_sq() {
    return from_coeffs("ch", [](int k) { return cplx(inv_fact(2 * k)); }, 200);
}

AnalyticKernel sinc_sq() {
    return from_coeffs("sinc", [](int k) { return cplx((k % 2 ? -1.0 : 1.0) * inv_fact(2 * k + 1)); }, 200);
}

AnalyticKernel cos_sq() {
    return from_coeffs("cos2", [](int k) { return cplx((k % 2 ? -1.0 : 1.0) * inv_fact(2 * k)); }, 200);
}

AnalyticKernel thc_sq() {
    auto t = std::make_shared<std::vector<cplx>>(taylor_thc(80));
    return from_coeffs("thc", [t](int k) { return k < int(t->size()) ? (*t)[k] : cplx(0); }, 80);
}

AnalyticKernel by_name(const std::string& name) {
    if (name == "exp") return exp();
    if (name == "sin") return sin();
    if (name == "cos") return cos();
    if (name == "sinh") return sinh();
    if (name == "cosh") return cosh();
    if (name == "log") return log();
    if (name == "sqrt") return sqrt();
    throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace kernels

std::vector<cplx> taylor_shc(int terms) {
    std::vector<cplx> c(terms);
    double f = 1;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) f /= double(2 * k) * double(2 * k + 1);
        c[k] = f;
    }
    return c;
}

std::vector<cplx> taylor_ch(int terms) {
    std::vector<cplx> c(terms);
    double f = 1;
    for (int k = 0; k < terms; ++k) {
        if (k > 0) f /= double(2 * k - 1) * double(2 * k);
        c[k] = f;
    }
    return c;
}

std::vector<cplx> taylor_thc(int terms) {
    // tanh(s)/s = (sinh(s)/s) / cosh(s), division of power series in s^2
    auto num = taylor_shc(terms), den = taylor_ch(terms);
    std::vector<cplx> q(terms);
    for (int k = 0; k < terms; ++k) {
        cplx acc = num[k];
        for (int i = 1; i <= k; ++i) acc -= den[i] * q[k - i];
        q[k] = acc / den[0];
    }
    return q;
}

// ---- lifting ----

namespace {

// P[r][K]: sum over unordered partitions of K into r blocks of the product of block coefficients
std::vector<std::vector<cplx>> partition_table(const Pim& a, int rmax) {
    const unsigned sz = static_cast<unsigned>(a.size());
    std::vector<std::vector<cplx>> P(rmax + 1, std::vector<cplx>(sz, cplx(0)));
    for (unsigned K = 1; K < sz; ++K) P[1][K] = a[K];
    for (int r = 2; r <= rmax; ++r) {
        for (unsigned K = 1; K < sz; ++K) {
            if (std::popcount(K) < r) continue;
            const unsigned low = K & (~K + 1);
            const unsigned rest = K & ~low;
            cplx acc = 0;
            // block containing the lowest element: low | sub, with sub a proper submask of rest
            for (unsigned sub = rest;; sub = (sub - 1) & rest) {
                unsigned B = low | sub;
                if (B != K && a[B] != cplx(0)) acc += a[B] * P[r - 1][K & ~B];
                if (sub == 0) break;
            }
            P[r][K] = acc;
        }
    }
    return P;
}

}  // namespace

cplx partition_sum(unsigned K, int r, const Pim& a) {
    const int p = std::popcount(K);
    if (K >= a.size()) throw std::out_of_range("subset outside tag range");
    if (r < 1 || r > p) throw std::out_of_range("block count out of range: r=" + std::to_string(r) + ", p=" + std::to_string(p));
    return partition_table(a, r)[r][K];
}

Pim pim_apply(const AnalyticKernel& f, const Pim& a) {
    const unsigned tags = a.support_tags() & ~0u;
    const int need = std::popcount(tags);
    if (need > f.max_order) throw std::domain_error("kernel " + f.name + ": derivative of order " + std::to_string(need) + " unavailable");
    std::vector<cplx> d(need + 1);
    for (int r = 0; r <= need; ++r) d[r] = f.deriv(r, a.scalar());
    Pim out(a.n(), d[0]);
    if (need == 0) return out;
    auto P = partition_table(a, need);
    for (unsigned K = 1; K < a.size(); ++K) {
        if ((K & ~tags) != 0) continue;
        cplx acc = 0;
        const int p = std::popcount(K);
        for (int r = 1; r <= p; ++r) acc += d[r] * P[r][K];
        out[K] = acc;
    }
    return out;
}

// ---- signatures ----

Signature Signature::parse(const std::string& text) {
    std::vector<Slot> slots;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok == "1")
            slots.push_back(Slot::One);
        else if (tok == "n" || tok == "N")
            slots.push_back(Slot::Nil);
        else if (tok == "i" || tok == "I")
            slots.push_back(Slot::Im);
        else
            throw std::invalid_argument("bad signature token '" + tok + "' (expected 1, n or i)");
    }
    if (slots.empty()) throw std::invalid_argument("empty signature");
    if (int(slots.size()) > kMaxTags) throw std::invalid_argument("signature longer than 8 slots");
    return Signature(std::move(slots));
}

bool Signature::quantum_allowed() const {
    return std::none_of(slots_.begin(), slots_.end(), [](Slot s) { return s == Slot::Im; });
}

unsigned Signature::nil_mask() const {
    unsigned m = 0;
    for (std::size_t r = 0; r < slots_.size(); ++r)
        if (slots_[r] == Slot::Nil) m |= 1u << r;
    return m;
}

std::string Signature::str() const {
    std::string s;
    for (std::size_t r = 0; r < slots_.size(); ++r) {
        if (r) s += ',';
        s += slots_[r] == Slot::One ? "1" : slots_[r] == Slot::Nil ? "n" : "i";
    }
    return s;
}

std::vector<Signature> Signature::all(int N) {
    std::vector<Signature> out;
    int m = N - 1, total = 1;
    for (int i = 0; i < m; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        std::vector<Slot> s;
        for (int i = 0, c = code; i < m; ++i, c /= 3) s.push_back(static_cast<Slot>(c % 3));
        out.emplace_back(std::move(s));
    }
    return out;
}

Pim slot_value(const Signature& sig, int r) {
    const int n = sig.tags();
    if (r < 1 || r > n) throw std::out_of_range("slot index out of range");
    switch (sig.slots()[r - 1]) {
        case Slot::One: return Pim(n, 1.0);
        case Slot::Nil: return Pim::tag(n, r);
        default: return Pim(n, cplx(0, 1));
    }
}

Pim jfactor(const Signature& sig, int mu, int nu) {
    const int N = sig.N();
    if (mu < 1 || mu > N || nu < 1 || nu > N)
        throw std::out_of_range("J index out of range: " + std::to_string(mu) + "," + std::to_string(nu));
    Pim J(sig.tags(), 1.0);
    for (int r = mu; r < nu; ++r) J = J * slot_value(sig, r);
    return J;
}

ScaledTrig scaled_trig(const Pim& j, double phi) {
    Pim j2 = j * j;
    for (unsigned s = 1; s < j2.size(); ++s)
        if (j2[s] != cplx(0)) throw std::invalid_argument("scaled_trig: j^2 is not a scalar");
    const cplx s = j2.scalar();
    cplx sinc, cs;
    if (s == cplx(1)) {
        sinc = std::sin(phi);
        cs = std::cos(phi);
    } else if (s == cplx(-1)) {
        sinc = std::sinh(phi);
        cs = std::cosh(phi);
    } else if (s == cplx(0)) {
        sinc = phi;
        cs = 1.0;
    } else {
        // phi * sum (-s phi^2)^m/(2m+1)!  and  sum (-s phi^2)^m/(2m)!
        const cplx x = -s * phi * phi;
        cplx ts = phi, tc = 1.0;
        sinc = ts;
        cs = tc;
        for (int m = 1; m < 200; ++m) {
            ts *= x / (double(2 * m) * double(2 * m + 1));
            tc *= x / (double(2 * m - 1) * double(2 * m));
            sinc += ts;
            cs += tc;
            if (std::abs(ts) + std::abs(tc) < 1e-18) break;
        }
    }
    const int n = j.n();
    Pim sc(n, sinc);
    return {j * sc, sc, Pim(n, cs)};
}

// ---- text syntax ----

namespace {

struct Parser {
    const std::string& s;
    std::size_t p = 0;
    int n;

    void skip() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at column " + std::to_string(p + 1) + ": " + what + " in '" + s + "'");
    }
    Pim expr() {
        skip();
        Pim acc(n, 0.0);
        bool first = true;
        while (true) {
            skip();
            double sign = 1;
            if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
                sign = s[p] == '-' ? -1 : 1;
                ++p;
            } else if (!first) {
                break;
            }
            acc += term() * sign;
            first = false;
        }
        return acc;
    }
    Pim term() {
        Pim acc = factor();
        while (true) {
            skip();
            if (p < s.size() && s[p] == '*') {
                ++p;
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }
    Pim factor() {
        skip();
        if (p >= s.size()) fail("unexpected end");
        char c = s[p];
        if (c == '(') {
            ++p;
            Pim v = expr();
            skip();
            if (p >= s.size() || s[p] != ')') fail("expected ')'");
            ++p;
            return v;
        }
        if (c == 'i' && p + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[p + 1]))) {
            ++p;
            int k = 0;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) k = k * 10 + (s[p++] - '0');
            if (k < 1 || k > n) fail("tag i" + std::to_string(k) + " outside 1.." + std::to_string(n));
            return Pim::tag(n, k);
        }
        if (c == 'j') {
            ++p;
            return Pim(n, cplx(0, 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s.c_str() + p;
            char* end = nullptr;
            double x = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            p += static_cast<std::size_t>(end - begin);
            if (p < s.size() && s[p] == 'j') {
                ++p;
                return Pim(n, cplx(0, x));
            }
            return Pim(n, x);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

Pim parse_pim(const std::string& text, int n) {
    if (n < 0) {
        n = 0;
        for (std::size_t p = 0; p + 1 < text.size(); ++p)
            if (text[p] == 'i' && std::isdigit(static_cast<unsigned char>(text[p + 1]))) n = std::max(n, text[p + 1] - '0');
    }
    check_n(n);
    Parser ps{text, 0, n};
    Pim v = ps.expr();
    ps.skip();
    if (ps.p != text.size()) ps.fail("trailing input");
    return v;
}

cplx parse_complex(const std::string& raw) {
    std::string t;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex number");
    auto num = [&](const std::string& x, double dflt) {
        if (x.empty() || x == "+") return dflt;
        if (x == "-") return -dflt;
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(x, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad complex number '" + raw + "'");
        }
        if (used != x.size()) throw std::invalid_argument("bad complex number '" + raw + "'");
        return v;
    };
    char last = t.back();
    if (last != 'i' && last != 'j') return num(t, 0);
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0, num(t, 1)};
    return {num(t.substr(0, split), 0), num(t.substr(split), 1)};
}

}  // namespace ckq
