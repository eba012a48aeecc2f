#include <Eigen/Dense>
#include <random>

#include "catch_amalgamated.hpp"
#include "ckq/dual.hpp"

using namespace ckq;

namespace {

const std::vector<std::string> kQuantum = {"1,1", "n,1", "1,n", "n,n"};
const std::vector<cplx> kV = {cplx(0.37), cplx(0.61, 0.29)};
const cplx kI(0, 1);

Eigen::MatrixXcd scalar_part(const DMat& M) {
    Eigen::MatrixXcd E(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) E(i, j) = M(i, j)[0];
    return E;
}

}  // namespace

TEST_CASE("R± from the R-matrix") {
    for (const auto& s : kQuantum) {
        const Signature sig = Signature::parse(s);
        const int n = sig.tags();
        const DualFunctionals d0 = build_functionals(sig, 0.0);
        CHECK(max_diff(d0.Rp, DMat::identity(9, n)) == 0);
        CHECK(max_diff(d0.Rm, DMat::identity(9, n)) == 0);
        for (cplx v : kV) {
            const DualFunctionals d = build_functionals(sig, v);
            CHECK(max_diff(d.Rm * d.R, DMat::identity(9, n)) < 1e-14);
            CHECK(max_diff(d.P * dmat_inverse(d.Rm) * d.P, d.Rp) < 1e-13);
        }
    }
    const Signature nn = Signature::parse("n,n");
    const DualFunctionals d = build_functionals(nn, 0.37);
    const DMat expect = DMat::identity(9, 2) - (0.37 * quantum_J(nn)) * rmatrix_tilde(2);
    CHECK(max_diff(d.Rm, expect) == 0);
}

TEST_CASE("lower triangular inverse against a dense solver") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    DMat L(6, 6, 0);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j <= i; ++j) L(i, j) = Pim(0, cplx(N(rng), N(rng)) + (i == j ? 3.0 : 0.0));
    const Eigen::MatrixXcd ref = scalar_part(L).inverse();
    CHECK((scalar_part(lower_triangular_inverse(L)) - ref).cwiseAbs().maxCoeff() < 1e-12);
    L(0, 3) = Pim(0, 1.0);
    CHECK_THROWS(lower_triangular_inverse(L));
}

TEST_CASE("printed pairings at the undeformed signature") {
    const cplx v = 0.37;
    const DualFunctionals d = build_functionals(Signature::parse("1,1"), v);
    auto P = [&](const char* l, const char* t) { return pairing_primed(d, l, t)[0]; };
    CHECK(std::abs(P("l11", "t22") - 1.0) < 1e-15);
    CHECK(std::abs(P("l11", "t11") - std::cosh(v)) < 1e-15);
    CHECK(std::abs(P("l13", "t13") - (std::cosh(2.0 * v) - 1.0) / 2.0) < 1e-15);
    CHECK(std::abs(P("l12", "t12") - (std::cosh(1.5 * v) - std::cosh(0.5 * v)) / 2.0) < 1e-15);
    CHECK(std::abs(P("l12", "t~21") + kI * std::sinh(v)) < 1e-15);
    CHECK(std::abs(P("l~12", "t12") + 0.5 * kI * (std::sinh(1.5 * v) + std::sinh(0.5 * v))) < 1e-15);

    // entries the computation does not reproduce as printed
    CHECK(std::abs(P("l11", "t~11") - (-kI * std::sinh(v))) < 1e-15);
    const cplx a = 2.0 * std::sinh(v) - std::sinh(2.0 * v);
    CHECK(std::abs(P("l13", "t~13") - (-0.5 * kI * a)) < 1e-15);
    CHECK(std::abs(P("l~13", "t13") - (0.5 * kI * a)) < 1e-15);
}

TEST_CASE("pairing table report") {
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            INFO(s << " v=" << v);
            const auto rows = pairing_table(Signature::parse(s), v);
            CHECK(rows.size() == 63);
            std::vector<std::string> bad;
            for (const auto& r : rows) {
                if (!r.listed) CHECK(r.rhs.max_abs() <= 1e-10);
                if (r.listed && r.diff > 1e-10) bad.push_back(r.l + "(" + r.t + ")");
            }
            if (s == "1,1")
                CHECK(bad == std::vector<std::string>{"l11(t~11)", "l13(t~13)", "l~13(t13)"});
            else
                CHECK(bad == std::vector<std::string>{"l11(t~11)"});

            const Report rep = verify_pairing_table(Signature::parse(s), v);
            CHECK_FALSE(rep.pass);
            CHECK(rep.conditions.at(0).second);
            CHECK(rep.detail["asymmetry_matching_variants"] == json::array({"printed J^-1 / J, halved"}));
        }
}

TEST_CASE("printed values with nilpotent slots") {
    const SlotAssignment s = SlotAssignment::from(Signature::parse("n,n"));
    const ExpSum sh{{{0.5, 1.0}, {-0.5, -1.0}}};
    // J^-1 sinh(Jv) with J = i1 i2 is v
    const Pim x = evaluate_printed(s, 1.0, -1, -1, sh, 0.37);
    CHECK(max_diff(x, Pim(2, 0.37)) < 1e-15);
    // j1^-1 cosh(Jv) keeps a negative power of a nilpotent slot
    const ExpSum chh{{{0.5, 1.0}, {0.5, -1.0}}};
    CHECK_THROWS_AS(evaluate_printed(s, 1.0, -1, 0, chh, 0.37), std::domain_error);
}

TEST_CASE("L relations, commutators and the representation") {
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            INFO(s << " v=" << v);
            const Signature sig = Signature::parse(s);
            CHECK(verify_L_relations(sig, v).pass);
            CHECK(verify_dual_commutators(sig, v).pass);
            CHECK(verify_rho_homomorphism(sig, v, 17).pass);
        }
    for (const auto& m : dual_commutator_residuals(build_functionals(Signature::parse("1,1"), 0.0))) CHECK(m.max_abs() == 0);
}

TEST_CASE("commutators in a dense representation oracle") {
    // ρ built directly from the scalar R-matrix, independent of D arithmetic
    const cplx z = 0.37;
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(9, 9);
    const cplx q = std::exp(z), sh = std::sinh(z);
    R(0, 0) = R(8, 8) = q;
    R(2, 2) = R(6, 6) = 1.0 / q;
    R(3, 1) = R(7, 5) = 2.0 * sh;
    R(4, 2) = R(6, 4) = -2.0 * std::exp(-z / 2.0) * sh;
    R(6, 2) = 2.0 * (1.0 - 1.0 / q) * sh;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) P(a * 3 + b, b * 3 + a) = 1;
    const Eigen::MatrixXcd Rp = P * R * P, Rm = R.inverse();
    auto rho = [](const Eigen::MatrixXcd& M, int i, int j) {
        Eigen::Matrix3cd r;
        for (int c = 0; c < 3; ++c)
            for (int e = 0; e < 3; ++e) r(c, e) = M(i * 3 + c, j * 3 + e);
        return r;
    };
    const Eigen::Matrix3cd l11 = rho(Rp, 0, 0), l12 = (rho(Rp, 0, 1) - rho(Rm, 2, 1)) / 2.0,
                           lt = kI * (rho(Rp, 0, 1) + rho(Rm, 2, 1)) / 2.0, I = Eigen::Matrix3cd::Identity();
    const Eigen::Matrix3cd r3 = l12 * lt - lt * l12 - ((I - l11 * l11) * 2.0 * kI * std::sinh(z / 2.0) -
                                                       kI * (l12 * l12 + lt * lt) * std::tanh(z / 2.0));
    CHECK(r3.cwiseAbs().maxCoeff() < 1e-14);

    const DualFunctionals d = build_functionals(Signature::parse("1,1"), z);
    CHECK((scalar_part(rho_functional(d, "l~12")) - lt).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("imaginary slots are rejected on the dual side") {
    CHECK_THROWS_AS(verify_pairing_table(Signature::parse("i,1"), 0.37), QuantumSignatureError);
    CHECK_THROWS_AS(verify_L_relations(Signature::parse("1,i"), 0.37), QuantumSignatureError);
}
