#include <random>

#include "catch_amalgamated.hpp"
#include "ckq/classical.hpp"

using namespace ckq;

namespace {

double sc_re(const DMat& M, int i, int j) { return M(i, j).scalar().real(); }

DMat lambda(const Signature& sig) {
    DMat L(sig.N(), sig.N(), sig.tags());
    for (int k = 1; k <= sig.N(); ++k) L(k - 1, k - 1) = jfactor(sig, 1, k);
    return L;
}

}  // namespace

TEST_CASE("real-form rotations in the plane") {
    const double phi = 0.6;
    DMat g = elementary_rotation(Signature::parse("n"), 1, 2, phi, Form::Real);
    CHECK(g(0, 0).scalar() == cplx(1));
    CHECK(g(0, 1).is_zero());
    CHECK(g(1, 0).scalar() == cplx(phi));
    CHECK(g(1, 1).scalar() == cplx(1));

    DMat e = elementary_rotation(Signature::parse("1"), 1, 2, phi, Form::Real);
    CHECK(sc_re(e, 0, 0) == Catch::Approx(std::cos(phi)));
    CHECK(sc_re(e, 0, 1) == Catch::Approx(-std::sin(phi)));
    CHECK(sc_re(e, 1, 0) == Catch::Approx(std::sin(phi)));

    DMat m = elementary_rotation(Signature::parse("i"), 1, 2, phi, Form::Real);
    CHECK(std::abs(m(0, 0).scalar() - std::cosh(phi)) < 1e-15);
    CHECK(std::abs(m(0, 1).scalar() - std::sinh(phi)) < 1e-15);
    CHECK(std::abs(m(1, 0).scalar() - std::sinh(phi)) < 1e-15);
}

TEST_CASE("special-form rotations act on x(j)") {
    const double phi = 0.45;
    DMat g = elementary_rotation(Signature::parse("n"), 1, 2, phi);
    CHECK(g(0, 1)[1] == cplx(-phi));
    CHECK(g(1, 0)[1] == cplx(phi));
    CHECK(g(0, 0).scalar() == cplx(1));

    DMat m = elementary_rotation(Signature::parse("i"), 1, 2, phi);
    CHECK(std::abs(m(0, 1).scalar() - cplx(0, -std::sinh(phi))) < 1e-15);
    CHECK(std::abs(m(1, 0).scalar() - cplx(0, std::sinh(phi))) < 1e-15);

    // x'_0 = x_0, x'_1 = x_1 + phi x_0 exactly for j = iota
    const Signature gal = Signature::parse("n");
    CKVector x = g * cartesian_vector(gal, {2.0, 3.0});
    CHECK(x.x[0].scalar() == cplx(2.0));
    CHECK(x.x[1][1] == cplx(3.0 + phi * 2.0));

    // the two forms are intertwined by diag(J_11, ..., J_1N)
    for (const auto& sig : Signature::all(4))
        for (int mu = 1; mu <= 4; ++mu)
            for (int nu = mu + 1; nu <= 4; ++nu) {
                DMat R = elementary_rotation(sig, mu, nu, 0.7), A = elementary_rotation(sig, mu, nu, 0.7, Form::Real);
                CHECK(max_diff(R * lambda(sig), lambda(sig) * A) < 1e-15);
            }
    CHECK_THROWS_AS(elementary_rotation(gal, 2, 1, 0.1), std::out_of_range);
}

TEST_CASE("determinant") {
    const Signature s = Signature::parse("n,i");
    CHECK(max_diff(ck_det(DMat::identity(3, 2)), Pim(2, 1.0)) == 0);
    for (const auto& sig : Signature::all(2)) CHECK(max_diff(ck_det(elementary_rotation(sig, 1, 2, 1.3)), Pim(1, 1.0)) < 1e-12);
    std::mt19937_64 rng(1);
    for (const auto& sig : Signature::all(4)) CHECK(max_diff(ck_det(random_group_element(sig, 5, rng)), Pim(3, 1.0)) < 1e-10);
    CHECK_THROWS(ck_det(DMat::identity(7, 0)));
    (void)s;
}

TEST_CASE("j-orthogonality and shape over all signatures") {
    std::mt19937_64 rng(2);
    CHECK(verify_j_orthogonality(DMat::identity(3, 2)).max() == 0);
    for (int N = 2; N <= 4; ++N)
        for (const auto& sig : Signature::all(N)) {
            DMat A = random_group_element(sig, 5, rng);
            INFO(sig.str());
            CHECK(verify_j_orthogonality(A).max() < 1e-10);
            CHECK(special_shape_defect(sig, A) < 1e-12);
            for (int mu = 1; mu <= N; ++mu)
                for (int nu = mu + 1; nu <= N; ++nu) CHECK(verify_j_orthogonality(elementary_rotation(sig, mu, nu, 2.1)).max() < 1e-12);
        }
}

TEST_CASE("quadratic forms") {
    Pim g = quadratic_form(cartesian_vector(Signature::parse("n"), {1.5, 4.0}));
    CHECK(g.scalar() == cplx(2.25));
    CHECK(g[1] == cplx(0));
    Pim m = quadratic_form(cartesian_vector(Signature::parse("i"), {1.5, 4.0}));
    CHECK(m.scalar() == cplx(2.25 - 16.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (const auto& sig : Signature::all(4)) {
        DMat A = random_group_element(sig, 5, rng);
        CKVector x = cartesian_vector(sig, {U(rng), U(rng), U(rng), U(rng)});
        CHECK(max_diff(quadratic_form(A * x), quadratic_form(x)) < 1e-10);
    }
}

TEST_CASE("symplectic basis") {
    const double s = 1 / std::sqrt(2.0);
    auto sp2 = symplectic_transform(2, 1);
    CHECK(std::abs(sp2.D(0, 0).scalar() - s) < 1e-16);
    CHECK(std::abs(sp2.D(0, 1).scalar() - s) < 1e-16);
    CHECK(std::abs(sp2.D(1, 0).scalar() - cplx(0, s)) < 1e-16);
    CHECK(std::abs(sp2.D(1, 1).scalar() - cplx(0, -s)) < 1e-16);
    auto sp3 = symplectic_transform(3, 2);
    CHECK(sp3.D(1, 1).scalar() == cplx(1));

    for (int N = 2; N <= 6; ++N) {
        auto sp = symplectic_transform(N, N - 1);
        DMat C0 = c0_matrix(N, N - 1), I = DMat::identity(N, N - 1);
        CHECK(max_diff(sp.D * C0 * sp.D.transpose(), I) < 1e-15);
        CHECK(max_diff(sp.D.transpose() * sp.D, C0) < 1e-15);
        CHECK(max_diff(sp.D * sp.Dinv, I) < 1e-15);
        // the literal D^t C0 D is diagonal with entries i, ..., (1), ..., -i
        DMat M = sp.D.transpose() * C0 * sp.D;
        for (int k = 0; k < N / 2; ++k) {
            CHECK(std::abs(M(k, k).scalar() - cplx(0, 1)) < 1e-15);
            CHECK(std::abs(M(N - 1 - k, N - 1 - k).scalar() - cplx(0, -1)) < 1e-15);
        }
    }

    CHECK(max_diff(to_symplectic(DMat::identity(3, 2)), DMat::identity(3, 2)) < 1e-15);
    std::mt19937_64 rng(4);
    for (const auto& sig : Signature::all(3)) {
        DMat A = random_group_element(sig, 5, rng), A2 = random_group_element(sig, 5, rng);
        DMat B = to_symplectic(A), C0 = c0_matrix(3, 2);
        CHECK(max_diff(B * C0 * B.transpose(), C0) < 1e-12);
        CHECK(max_diff(B.transpose() * C0 * B, C0) < 1e-12);
        CHECK(max_diff(to_symplectic(A * A2), B * to_symplectic(A2)) < 1e-10);
        CKVector y = to_symplectic(cartesian_vector(sig, {0.3, -0.8, 0.5}));
        CHECK(max_diff(quadratic_form(B * y), quadratic_form(y)) < 1e-12);
    }
}

TEST_CASE("translations and distance") {
    CHECK(translate(0, 0.3, 0.4) == Catch::Approx(0.7));
    const double u = 0.3, v = 0.5;
    CHECK(translate(1, std::tan(u), std::tan(v)) == Catch::Approx(std::tan(u + v)).epsilon(1e-14));
    CHECK(translate(-1, std::tanh(u), std::tanh(v)) == Catch::Approx(std::tanh(u + v)).epsilon(1e-14));
    CHECK_THROWS_AS(translate(1, 2.0, 0.5), PoleEncountered);
    CHECK_THROWS_AS(translate(-1, 0.1, 1.5), std::invalid_argument);
    CHECK(distance(0, 0.2, -0.5) == Catch::Approx(0.7));
    CHECK(distance(1, 0.4, 0.4) == 0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    for (int omega : {1, 0, -1}) {
        double comp = 0, inv = 0;
        for (int t = 0; t < 1000; ++t) {
            double xi = U(rng), a = U(rng), b = U(rng), xa = U(rng), xb = U(rng);
            double lhs = translate(omega, translate(omega, xi, a), b);
            double rhs = translate(omega, xi, (a + b) / (1 - omega * a * b));
            comp = std::max(comp, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            double ta = translate(omega, xa, a), tb = translate(omega, xb, a);
            if (omega == -1 && (std::abs(ta) >= 1 || std::abs(tb) >= 1)) continue;
            inv = std::max(inv, std::abs(distance(omega, ta, tb) - distance(omega, xa, xb)));
        }
        INFO("omega " << omega);
        CHECK(comp <= 1e-12);
        CHECK(inv <= 1e-12);
    }
}

TEST_CASE("translation matches the SO(2) action on xi = x1/x0") {
    const double phi = 0.4, x0 = 1.2, x1 = 0.3;
    auto pts = orbit_sample("euclid", x0, x1, {phi});
    CHECK(pts[0].x1 / pts[0].x0 == Catch::Approx(translate(1, x1 / x0, std::tan(phi))).epsilon(1e-12));
}

TEST_CASE("contraction limit") {
    std::vector<double> eps;
    for (int k = 0; k <= 6; ++k) eps.push_back(0.1 / (1 << k));
    auto d = contraction_limit_demo(0.8, 1.3, -0.4, eps);
    CHECK(d.exact0 == 1.3);
    CHECK(d.exact1 == Catch::Approx(-0.4 + 0.8 * 1.3));
    CHECK(d.rows.back().ratio0 == Catch::Approx(0.25).margin(0.05));
    CHECK(d.rows.back().ratio1 == Catch::Approx(0.25).margin(0.05));
    auto d3 = contraction_limit_demo(0.8, 1.3, -0.4, {1e-3});
    CHECK(d3.rows[0].err0 <= 1e-5 * 0.8 * 0.8 * 1.3 + 1e-3 * 0.8 * 0.4);
    CHECK_THROWS(contraction_limit_demo(0.8, 1.0, 1.0, {0.1, 0.2}));
}

TEST_CASE("orbits keep their invariant") {
    std::vector<double> grid;
    for (int k = 0; k <= 50; ++k) grid.push_back(-3 + 0.12 * k);
    for (std::string plane : {"euclid", "galilei", "minkowski"}) {
        auto pts = orbit_sample(plane, 0.6, 0.8, grid);
        const double inv0 = orbit_invariant(plane, 0.6, 0.8);
        for (auto& p : pts) CHECK(std::abs(orbit_invariant(plane, p.x0, p.x1) - inv0) <= 1e-12 * std::max(1.0, p.x0 * p.x0 + p.x1 * p.x1));
    }
    for (auto& p : orbit_sample("galilei", 0.6, 0.8, grid)) CHECK(p.x0 == 0.6);
    CHECK_THROWS_AS(orbit_sample("sphere", 1, 0, grid), std::invalid_argument);
}

TEST_CASE("classical suite") {
    for (int N = 2; N <= 4; ++N)
        for (const auto& r : verify_classical(N, 42)) {
            INFO(r.check << " " << r.inputs.dump() << " residual " << r.residual);
            if (r.check == "classical.symplectic_DtC0D")
                CHECK_FALSE(r.pass);
            else
                CHECK(r.pass);
        }
}
