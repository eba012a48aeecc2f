#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckq {

using cplx = std::complex<double>;

constexpr int kMaxTags = 8;

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct TagMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Element of D_n: complex coefficients indexed by subsets of {i1..in} (bitmask).
class Pim {
public:
    Pim() : n_(0), c_(1, cplx(0)) {}
    explicit Pim(int n, cplx a0 = 0.0);

    static Pim tag(int n, int k);  // k is 1-based
    static Pim monomial(int n, unsigned mask, cplx c = 1.0);

    int n() const { return n_; }
    std::size_t size() const { return c_.size(); }
    cplx operator[](unsigned mask) const { return c_[mask]; }
    cplx& operator[](unsigned mask) { return c_[mask]; }
    cplx scalar() const { return c_[0]; }

    bool is_unit() const { return c_[0] != cplx(0); }
    bool is_zero() const;
    // bitmask of subsets carrying a nonzero coefficient is not stored; this scans
    unsigned support_tags() const;
    double max_abs() const;

    Pim& operator+=(const Pim& o);
    Pim& operator-=(const Pim& o);
    Pim& operator*=(cplx s);
    Pim operator-() const;

    std::string str(int digits = 6) const;

private:
    int n_;
    std::vector<cplx> c_;
};

Pim pim_mul(const Pim& a, const Pim& b);
Pim pim_inv(const Pim& a);

inline Pim operator+(Pim a, const Pim& b) { return a += b; }
inline Pim operator-(Pim a, const Pim& b) { return a -= b; }
inline Pim operator*(const Pim& a, const Pim& b) { return pim_mul(a, b); }
inline Pim operator*(Pim a, cplx s) { return a *= s; }
inline Pim operator*(cplx s, Pim a) { return a *= s; }
inline Pim operator+(Pim a, cplx s) { a[0] += s; return a; }
inline Pim operator-(Pim a, cplx s) { a[0] -= s; return a; }

double max_diff(const Pim& a, const Pim& b);
Pim pim_pow(const Pim& a, int k);

// f^{(r)}(a0) for r >= 0
struct AnalyticKernel {
    std::string name;
    std::function<cplx(int, cplx)> deriv;
    int max_order = 1 << 20;
};

namespace kernels {
AnalyticKernel exp();
AnalyticKernel sin();
AnalyticKernel cos();
AnalyticKernel sinh();
AnalyticKernel cosh();
AnalyticKernel log();
AnalyticKernel sqrt();
// entire function given by its Taylor coefficients at 0
AnalyticKernel series(std::string name, std::vector<cplx> taylor);
// sinh(s)/s, cosh(s), sin(s)/s, cos(s), tanh(s)/s as functions of x = s^2
AnalyticKernel shc_sq();
AnalyticKernel ch_sq();
AnalyticKernel sinc_sq();
AnalyticKernel cos_sq();
AnalyticKernel thc_sq();
AnalyticKernel by_name(const std::string& name);
}  // namespace kernels

// Taylor coefficients at 0 of the even kernels above, in powers of x = s^2
std::vector<cplx> taylor_shc(int terms);
std::vector<cplx> taylor_ch(int terms);
std::vector<cplx> taylor_thc(int terms);

cplx partition_sum(unsigned K, int r, const Pim& a);
Pim pim_apply(const AnalyticKernel& f, const Pim& a);

// ---- parameter signatures ----

enum class Slot { One, Nil, Im };

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Slot> slots) : slots_(std::move(slots)) {}
    static Signature parse(const std::string& text);

    int N() const { return static_cast<int>(slots_.size()) + 1; }
    int tags() const { return static_cast<int>(slots_.size()); }
    const std::vector<Slot>& slots() const { return slots_; }
    bool quantum_allowed() const;
    unsigned nil_mask() const;
    std::string str() const;
    bool operator==(const Signature&) const = default;

    static std::vector<Signature> all(int N);

private:
    std::vector<Slot> slots_;
};

Pim slot_value(const Signature& sig, int r);  // j_r, 1-based
Pim jfactor(const Signature& sig, int mu, int nu);

struct ScaledTrig {
    Pim sin, sinc, cos;  // sin jφ, j⁻¹ sin jφ, cos jφ
};
ScaledTrig scaled_trig(const Pim& j, double phi);

// `1 + 2*i1 - 0.5*i1*i2`, complex scalars as `a+bj`
Pim parse_pim(const std::string& text, int n = -1);
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z, int digits = 12);

}  // namespace ckq
