#pragma once

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cplx = std::complex<double>;

// Hand-written R_q at q = e^z, 1-based (row, col) as printed.
inline Eigen::MatrixXcd printed_r(cplx z) {
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(9, 9);
    const cplx s = std::sinh(z), m = -2.0 * std::exp(-z / 2.0) * s;
    auto set = [&](int r, int c, cplx x) { R(r - 1, c - 1) = x; };
    set(1, 1, std::exp(z));
    set(9, 9, std::exp(z));
    set(3, 3, std::exp(-z));
    set(7, 7, std::exp(-z));
    set(4, 2, 2.0 * s);
    set(8, 6, 2.0 * s);
    set(5, 3, m);
    set(7, 5, m);
    set(7, 3, 2.0 * (1.0 - std::exp(-z)) * s);
    return R;
}

// R~ with R = I + Jv R~ over nilpotent J, 1-based as printed
inline Eigen::MatrixXcd printed_rtilde() {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(9, 9);
    auto set = [&](int r, int c, double x) { T(r - 1, c - 1) = x; };
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

inline double qybe_residual(const Eigen::MatrixXcd& R) {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(3, 3);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) P(a * 3 + b, b * 3 + a) = 1;
    const Eigen::MatrixXcd R12 = Eigen::kroneckerProduct(R, I), R23 = Eigen::kroneckerProduct(I, R);
    const Eigen::MatrixXcd P23 = Eigen::kroneckerProduct(I, P);
    const Eigen::MatrixXcd R13 = P23 * R12 * P23;
    return (R12 * R13 * R23 - R23 * R13 * R12).cwiseAbs().maxCoeff();
}

}  // namespace oracle
