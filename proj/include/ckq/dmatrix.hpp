#pragma once

#include <vector>

#include "ckq/pimenov.hpp"

namespace ckq {

enum class Basis { None, Cartesian, Symplectic };

// Dense matrix with entries in D_n.
class DMat {
public:
    DMat() = default;
    DMat(int rows, int cols, int n);
    static DMat identity(int N, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int n() const { return n_; }
    Pim& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Pim& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    DMat transpose() const;
    double max_abs() const;

    Basis basis = Basis::None;

private:
    int rows_ = 0, cols_ = 0, n_ = 0;
    std::vector<Pim> a_;
};

DMat operator*(const DMat& a, const DMat& b);
DMat operator+(const DMat& a, const DMat& b);
DMat operator-(const DMat& a, const DMat& b);
DMat operator*(const Pim& s, const DMat& a);
double max_diff(const DMat& a, const DMat& b);

// Gauss-Jordan over D with unit pivots; throws NotInvertible when no unit pivot exists.
DMat dmat_inverse(const DMat& a);

// Matrix with scalar (non-nilpotent) entries given row-major.
DMat dmat_from(int rows, int cols, int n, const std::vector<cplx>& entries);

}  // namespace ckq
