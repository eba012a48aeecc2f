#include "ckq/dmatrix.hpp"

#include <algorithm>

namespace ckq {

DMat::DMat(int rows, int cols, int n) : rows_(rows), cols_(cols), n_(n), a_(std::size_t(rows) * cols, Pim(n)) {}

DMat DMat::identity(int N, int n) {
    DMat m(N, N, n);
    for (int i = 0; i < N; ++i) m(i, i) = Pim(n, 1.0);
    return m;
}

DMat DMat::transpose() const {
    DMat t(cols_, rows_, n_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    t.basis = basis;
    return t;
}

double DMat::max_abs() const {
    double m = 0;
    for (const auto& p : a_) m = std::max(m, p.max_abs());
    return m;
}

DMat operator*(const DMat& a, const DMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    DMat c(a.rows(), b.cols(), a.n());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Pim& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Pim& bkj = b(k, j);
                if (!bkj.is_zero()) c(i, j) += aik * bkj;
            }
        }
    c.basis = a.basis;
    return c;
}

DMat operator+(const DMat& a, const DMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    DMat c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

DMat operator-(const DMat& a, const DMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    DMat c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

DMat operator*(const Pim& s, const DMat& a) {
    DMat c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

double max_diff(const DMat& a, const DMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    double m = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, max_diff(a(i, j), b(i, j)));
    return m;
}

DMat dmat_inverse(const DMat& a) {
    const int N = a.rows();
    if (a.cols() != N) throw std::invalid_argument("inverse of non-square matrix");
    DMat m = a, inv = DMat::identity(N, a.n());
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        double best = 0;
        for (int r = c; r < N; ++r) {
            double mag = std::abs(m(r, c).scalar());
            if (mag > best) best = mag, piv = r;
        }
        if (piv < 0) throw NotInvertible("matrix has no unit pivot in column " + std::to_string(c));
        if (piv != c)
            for (int j = 0; j < N; ++j) {
                std::swap(m(c, j), m(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        Pim p = pim_inv(m(c, c));
        for (int j = 0; j < N; ++j) {
            m(c, j) = p * m(c, j);
            inv(c, j) = p * inv(c, j);
        }
        for (int r = 0; r < N; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            Pim f = m(r, c);
            for (int j = 0; j < N; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

DMat dmat_from(int rows, int cols, int n, const std::vector<cplx>& entries) {
    if (entries.size() != std::size_t(rows) * cols) throw std::invalid_argument("entry count mismatch");
    DMat m(rows, cols, n);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Pim(n, entries[std::size_t(i) * cols + j]);
    return m;
}

}  // namespace ckq
