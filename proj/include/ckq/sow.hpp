#pragma once

#include <map>
#include <string>
#include <vector>

#include "ckq/free_algebra.hpp"
#include "ckq/pimenov.hpp"
#include "ckq/report.hpp"

namespace ckq {

// Power series in w truncated after w^order, coefficients in D_n. Stored flat: c[k * 2^n + mask].
class WSeries {
public:
    WSeries() = default;
    WSeries(int order, int tags);
    static WSeries constant(int order, const Pim& c);
    // c w^k
    static WSeries monomial(int order, int tags, int k, cplx c);
    // Σ_k taylor[k] (α J w)^{2k} · w^shift, the even kernel f(x) = Σ taylor[k] x^{2k} at x = αJw
    static WSeries even(int order, const std::vector<cplx>& taylor, const Pim& J, cplx alpha, int shift = 0);

    int order() const { return d_; }
    int tags() const { return n_; }
    Pim coeff(int k) const;
    cplx at(int k, unsigned mask) const { return c_[std::size_t(k) * S() + mask]; }
    cplx& at(int k, unsigned mask) { return c_[std::size_t(k) * S() + mask]; }

    bool is_zero() const;
    double max_abs() const;
    WSeries& operator+=(const WSeries& o);
    WSeries& operator-=(const WSeries& o);
    WSeries& operator*=(cplx s);
    WSeries& operator*=(const Pim& p);
    // principal square root; the w^0 coefficient must be a unit of D
    WSeries sqrt() const;
    std::string str(int digits = 6) const;

private:
    std::size_t S() const { return std::size_t(1) << n_; }
    int d_ = 0, n_ = 0;
    std::vector<cplx> c_;
    friend WSeries operator*(const WSeries& a, const WSeries& b);
};

WSeries operator*(const WSeries& a, const WSeries& b);
inline WSeries operator+(WSeries a, const WSeries& b) { return a += b; }
inline WSeries operator-(WSeries a, const WSeries& b) { return a -= b; }
inline WSeries operator*(cplx s, WSeries a) { return a *= s; }
inline WSeries operator*(const Pim& p, WSeries a) { return a *= p; }

// Letters of so_w(3;j): X01 < X02 < X12.
enum Letter : std::uint8_t { X01 = 0, X02 = 1, X12 = 2 };

// Element of the tensor power A^{⊗banks}: Σ c(w) · word_1 ⊗ ... ⊗ word_banks.
struct Sow {
    using Key = std::vector<Word>;
    int banks = 1;
    std::map<Key, WSeries> terms;

    double max_abs() const;
    bool is_zero() const { return terms.empty(); }
    std::string str() const;
};

enum class Descent { First, Last };

// Rewriting engine for so_w(3;j) at fixed signature and truncation orders.
class SowEngine {
public:
    SowEngine(const Signature& sig, int d_w = 8, int d_x = 8);

    const Signature& signature() const { return sig_; }
    int d_w() const { return dw_; }
    int d_x() const { return dx_; }
    int tags() const { return n_; }
    const Pim& J() const { return J_; }

    WSeries scalar(cplx c) const;
    WSeries scalar(const Pim& c) const;

    Sow one(int banks = 1) const;
    Sow gen(Letter x) const;
    Sow word(const Word& w, const WSeries& c) const;  // unnormalized single term
    // e^{c w X02}
    Sow exp_x02(cplx c) const;
    // sinh(w X02)/w
    Sow sinh_x02_over_w() const;

    Sow add(const Sow& a, const Sow& b, cplx s = 1.0) const;
    Sow scale(const Sow& a, const WSeries& c) const;
    Sow mul(const Sow& a, const Sow& b) const;
    Sow tensor(const Sow& a, const Sow& b) const;

    // normal form of a single word, with the chosen descent strategy
    const std::map<Word, WSeries>& normal_word(const Word& w, Descent s = Descent::First) const;
    // normal-orders every bank
    Sow normalize(const Sow& x, Descent s = Descent::First) const;
    // drops terms whose X02-degree exceeds d_X in any bank; returns the dropped magnitude
    double project(Sow& x) const;

    // Hopf maps. Bank-local variants act on bank `b` and change the number of banks.
    Sow coproduct(const Sow& x) const;
    Sow coproduct_bank(const Sow& x, int b) const;
    Sow counit_bank(const Sow& x, int b) const;
    Sow antipode(const Sow& x) const;
    Sow antipode_bank(const Sow& x, int b) const;
    Sow multiply_banks(const Sow& x) const;  // 2 banks -> 1

    // the three defining relations, as elements that vanish in the algebra
    std::vector<Sow> relations() const;
    std::vector<std::string> relation_names() const;

private:
    Sow letter_coproduct(std::uint8_t x) const;
    Sow letter_antipode(std::uint8_t x) const;

    Signature sig_;
    int dw_, dx_, n_;
    Pim j1_, j2_, J_;
    mutable std::map<Word, std::map<Word, WSeries>> memo_[2];
};

struct SowResidual {
    double residual = 0;
    double overflow = 0;
    std::vector<std::pair<std::string, double>> parts;
};

SowResidual sow_hopf_residuals(const SowEngine& e);
// `phase` multiplies (2wJ^-1 sin Jw)^{1/2} in E; the isomorphism takes phase = i
SowResidual sow_iso_residuals(const SowEngine& e, cplx phase = cplx(0, 1));
// max |NF_first - NF_last| over all words of the given length
double sow_diamond(const SowEngine& e, int length = 3);

Report verify_sow_hopf(const Signature& sig, int trunc = 8);
Report verify_duality_isomorphism(const Signature& sig, int trunc = 8);
// reruns at truncations 6, 8, 10 and requires the residual to be non-increasing above a round-off floor
Report verify_truncation_decay(const std::string& which, const Signature& sig, const std::vector<int>& orders = {6, 8, 10});

std::string sow_word_str(const Word& w);

}  // namespace ckq
