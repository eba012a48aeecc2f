#include "ckq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ckq {

DMat elementary_rotation(const Signature& sig, int mu, int nu, double phi, Form form) {
    const int N = sig.N();
    if (mu < 1 || nu > N || mu >= nu)
        throw std::out_of_range("rotation plane must satisfy 1 <= mu < nu <= N (got " + std::to_string(mu) + "," + std::to_string(nu) + ")");
    const Pim J = jfactor(sig, mu, nu);
    const ScaledTrig st = scaled_trig(J, phi);
    DMat M = DMat::identity(N, sig.tags());
    M(mu - 1, mu - 1) = st.cos;
    M(nu - 1, nu - 1) = st.cos;
    if (form == Form::Special) {
        M(mu - 1, nu - 1) = -st.sin;
        M(nu - 1, mu - 1) = st.sin;
    } else {
        M(mu - 1, nu - 1) = -(J * st.sin);
        M(nu - 1, mu - 1) = st.sinc;
    }
    M.basis = Basis::Cartesian;
    return M;
}

DMat random_group_element(const Signature& sig, int factors, std::mt19937_64& rng) {
    const int N = sig.N();
    std::uniform_real_distribution<double> ang(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(1, N);
    DMat g = DMat::identity(N, sig.tags());
    g.basis = Basis::Cartesian;
    for (int f = 0; f < factors; ++f) {
        int a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        if (a > b) std::swap(a, b);
        g = g * elementary_rotation(sig, a, b, ang(rng));
    }
    return g;
}

Pim ck_det(const DMat& M) {
    const int N = M.rows();
    if (M.cols() != N) throw std::invalid_argument("determinant of non-square matrix");
    if (N > 6) throw std::invalid_argument("ck_det: size cap is 6");
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    Pim det(M.n(), 0.0);
    do {
        int inv = 0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                if (perm[i] > perm[j]) ++inv;
        Pim term(M.n(), inv % 2 ? -1.0 : 1.0);
        for (int i = 0; i < N && !term.is_zero(); ++i) term = term * M(i, perm[i]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

OrthoResidual verify_j_orthogonality(const DMat& M) {
    const DMat I = DMat::identity(M.rows(), M.n());
    const DMat Mt = M.transpose();
    return {max_diff(M * Mt, I), max_diff(Mt * M, I)};
}

Pim jtilde(const Signature& sig, int k, int p) {
    return k < p ? jfactor(sig, k, p) : jfactor(sig, p, k);
}

double special_shape_defect(const Signature& sig, const DMat& M) {
    double defect = 0;
    for (int k = 1; k <= M.rows(); ++k)
        for (int p = 1; p <= M.cols(); ++p) {
            const Pim Jt = jtilde(sig, k, p);
            unsigned S = 0;
            for (unsigned s = 0; s < Jt.size(); ++s)
                if (Jt[s] != cplx(0)) S = s;
            const Pim& e = M(k - 1, p - 1);
            for (unsigned s = 0; s < e.size(); ++s) {
                if (s == S)
                    defect = std::max(defect, std::abs((e[s] / Jt[S]).imag()));
                else
                    defect = std::max(defect, std::abs(e[s]));
            }
        }
    return defect;
}

CKVector cartesian_vector(const Signature& sig, const std::vector<double>& reals) {
    if (int(reals.size()) != sig.N()) throw std::invalid_argument("vector length must equal N");
    CKVector v;
    for (int k = 1; k <= sig.N(); ++k) v.x.push_back(jfactor(sig, 1, k) * cplx(reals[k - 1]));
    return v;
}

CKVector operator*(const DMat& M, const CKVector& v) {
    if (M.cols() != int(v.x.size())) throw std::invalid_argument("matrix/vector shape mismatch");
    CKVector out;
    out.basis = v.basis;
    for (int i = 0; i < M.rows(); ++i) {
        Pim acc(M.n(), 0.0);
        for (int j = 0; j < M.cols(); ++j) acc += M(i, j) * v.x[j];
        out.x.push_back(acc);
    }
    return out;
}

DMat c0_matrix(int N, int n) {
    DMat C(N, N, n);
    for (int i = 0; i < N; ++i) C(i, N - 1 - i) = Pim(n, 1.0);
    return C;
}

Pim quadratic_form(const CKVector& v) {
    const int N = static_cast<int>(v.x.size());
    if (N == 0) throw std::invalid_argument("empty vector");
    const int n = v.x[0].n();
    Pim q(n, 0.0);
    if (v.basis == Basis::Symplectic) {
        for (int i = 0; i < N; ++i) q += v.x[i] * v.x[N - 1 - i];
    } else {
        for (int i = 0; i < N; ++i) q += v.x[i] * v.x[i];
    }
    return q;
}

Pim real_quadratic_form(const Signature& sig, const std::vector<double>& reals) {
    Pim q(sig.tags(), 0.0);
    for (int k = 1; k <= sig.N(); ++k) {
        Pim J = jfactor(sig, 1, k);
        q += J * J * cplx(reals[k - 1] * reals[k - 1]);
    }
    return q;
}

Symplectic symplectic_transform(int N, int n) {
    if (N < 2) throw std::invalid_argument("symplectic_transform needs N >= 2");
    const int h = N / 2;
    const bool odd = N % 2 == 1;
    const double s = 1.0 / std::sqrt(2.0);
    const cplx I(0, 1);
    DMat D(N, N, n);
    auto set = [&](int i, int j, cplx z) { D(i, j) = Pim(n, z * s); };
    const int lo = odd ? h + 1 : h;  // first row of the lower block
    for (int k = 0; k < h; ++k) {
        set(k, k, 1.0);                        // I
        set(k, lo + h - 1 - k, 1.0);           // C~0
        set(lo + k, h - 1 - k, I);             // i C~0
        set(lo + k, lo + k, -I);               // -i I
    }
    if (odd) D(h, h) = Pim(n, 1.0);
    D.basis = Basis::Symplectic;
    // D C0 D^t = I for this D, hence D^{-1} = C0 D^t
    DMat Dinv = c0_matrix(N, n) * D.transpose();
    Dinv.basis = Basis::Symplectic;
    return {D, Dinv};
}

DMat to_symplectic(const DMat& A) {
    const auto sp = symplectic_transform(A.rows(), A.n());
    DMat B = sp.Dinv * A * sp.D;
    B.basis = Basis::Symplectic;
    return B;
}

CKVector to_symplectic(const CKVector& x) {
    const auto sp = symplectic_transform(static_cast<int>(x.x.size()), x.x.at(0).n());
    CKVector y = sp.Dinv * x;
    y.basis = Basis::Symplectic;
    return y;
}

double translate(int omega, double xi, double a) {
    if (omega != 1 && omega != 0 && omega != -1) throw std::invalid_argument("omega must be 1, 0 or -1");
    if (omega == -1 && std::abs(a) >= 1) throw std::invalid_argument("hyperbolic translation parameter must lie in (-1,1)");
    const double den = 1 - omega * a * xi;
    if (std::abs(den) <= 1e-14 * (1 + std::abs(a * xi))) throw PoleEncountered("translation hits the pole 1 - omega*a*xi = 0");
    return (xi + a) / den;
}

double distance(int omega, double xa, double xb) {
    if (omega != 1 && omega != 0 && omega != -1) throw std::invalid_argument("omega must be 1, 0 or -1");
    if (omega == 0) return std::abs(xb - xa);
    if (omega == -1 && (std::abs(xa) >= 1 || std::abs(xb) >= 1))
        throw std::domain_error("hyperbolic distance undefined for ideal points (|xi| >= 1)");
    const double num = std::abs(xb - xa), den = std::abs(1 + omega * xb * xa);
    if (omega == 1) return den == 0 ? M_PI / 2 : std::atan(num / den);
    return std::atanh(num / den);
}

ContractionDemo contraction_limit_demo(double phi, double x0, double x1, const std::vector<double>& eps) {
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0)) throw std::invalid_argument("epsilon values must be positive");
        if (k > 0 && !(eps[k] < eps[k - 1])) throw std::invalid_argument("epsilon values must decrease");
    }
    // exact action with j = iota on x(j) = (x0, iota x1)
    const Signature gal({Slot::Nil});
    const CKVector xp = elementary_rotation(gal, 1, 2, phi) * cartesian_vector(gal, {x0, x1});
    ContractionDemo out{xp.x[0].scalar().real(), xp.x[1][1].real(), {}};
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double e = eps[k];
        const double y0 = x0 * std::cos(e * phi) - e * x1 * std::sin(e * phi);
        const double y1 = x1 * std::cos(e * phi) + x0 * std::sin(e * phi) / e;
        ContractionRow r{e, std::abs(y0 - out.exact0), std::abs(y1 - out.exact1), NAN, NAN};
        if (k > 0) {
            r.ratio0 = r.err0 / out.rows.back().err0;
            r.ratio1 = r.err1 / out.rows.back().err1;
        }
        out.rows.push_back(r);
    }
    return out;
}

namespace {

Signature plane_signature(const std::string& plane) {
    if (plane == "euclid") return Signature({Slot::One});
    if (plane == "galilei") return Signature({Slot::Nil});
    if (plane == "minkowski") return Signature({Slot::Im});
    throw std::invalid_argument("unknown plane '" + plane + "' (euclid, galilei, minkowski)");
}

}  // namespace

std::vector<OrbitPoint> orbit_sample(const std::string& plane, double x0, double x1, const std::vector<double>& phis) {
    const Signature sig = plane_signature(plane);
    if (phis.empty()) throw std::invalid_argument("empty phi grid");
    std::vector<OrbitPoint> pts;
    for (double phi : phis) {
        const DMat A = elementary_rotation(sig, 1, 2, phi, Form::Real);
        auto re = [&](int i, int j) { return A(i, j).scalar().real(); };
        pts.push_back({phi, re(0, 0) * x0 + re(0, 1) * x1, re(1, 0) * x0 + re(1, 1) * x1});
    }
    return pts;
}

double orbit_invariant(const std::string& plane, double x0, double x1) {
    const Signature sig = plane_signature(plane);
    return real_quadratic_form(sig, {x0, x1}).scalar().real();
}

std::vector<Report> verify_classical(int N, std::uint64_t seed, int trials) {
    std::vector<Report> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const int n = N - 1;

    for (const Signature& sig : Signature::all(N)) {
        double orth = 0, det = 0, form = 0, shape = 0, sympl = 0, sform = 0, homo = 0;
        for (int t = 0; t < trials; ++t) {
            const DMat A = random_group_element(sig, 5, rng);
            const DMat A2 = random_group_element(sig, 5, rng);
            orth = std::max(orth, verify_j_orthogonality(A).max());
            det = std::max(det, max_diff(ck_det(A), Pim(n, 1.0)));
            shape = std::max(shape, special_shape_defect(sig, A));
            std::vector<double> r(N);
            for (auto& x : r) x = U(rng);
            const CKVector x = cartesian_vector(sig, r);
            form = std::max(form, max_diff(quadratic_form(A * x), quadratic_form(x)));
            const DMat B = to_symplectic(A);
            const DMat C0 = c0_matrix(N, n);
            sympl = std::max({sympl, max_diff(B * C0 * B.transpose(), C0), max_diff(B.transpose() * C0 * B, C0)});
            const CKVector y = to_symplectic(x);
            sform = std::max(sform, max_diff(quadratic_form(B * y), quadratic_form(y)));
            homo = std::max(homo, max_diff(to_symplectic(A * A2), to_symplectic(A) * to_symplectic(A2)));
        }
        auto add = [&](const std::string& name, double res, double tol) {
            Report r;
            r.check = name;
            r.inputs = {{"signature", sig.str()}, {"N", N}};
            r.residual = res;
            r.tolerance = tol;
            out.push_back(r.finish());
        };
        add("classical.j_orthogonality", orth, 1e-10);
        add("classical.det", det, 1e-10);
        add("classical.form_invariance", form, 1e-10);
        add("classical.special_shape", shape, 1e-10);
        add("classical.symplectic_orthogonality", sympl, 1e-10);
        add("classical.symplectic_form_invariance", sform, 1e-10);
        add("classical.symplectic_homomorphism", homo, 1e-10);
    }

    const auto sp = symplectic_transform(N, n);
    const DMat C0 = c0_matrix(N, n), I = DMat::identity(N, n);
    {
        Report r;
        r.check = "classical.symplectic_DtC0D";
        r.inputs = {{"N", N}};
        r.residual = max_diff(sp.D.transpose() * C0 * sp.D, I);
        r.tolerance = 1e-14;
        out.push_back(r.finish());
    }
    {
        Report r;
        r.check = "classical.symplectic_DC0Dt";
        r.inputs = {{"N", N}};
        r.residual = std::max({max_diff(sp.D * C0 * sp.D.transpose(), I), max_diff(sp.D.transpose() * sp.D, C0),
                               max_diff(sp.D * sp.Dinv, I)});
        r.tolerance = 1e-14;
        out.push_back(r.finish());
    }
    return out;
}

}  // namespace ckq
