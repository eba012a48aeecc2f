#include <bit>
#include <random>

#include "catch_amalgamated.hpp"
#include "ckq/pimenov.hpp"
#include "ckq/pimenov_suite.hpp"
#include "oracles/nilpotent.hpp"

using namespace ckq;
using Catch::Approx;

namespace {

double cdist(cplx a, cplx b) { return std::abs(a - b); }

std::vector<cplx> coeffs(const Pim& p) {
    std::vector<cplx> v(p.size());
    for (unsigned s = 0; s < p.size(); ++s) v[s] = p[s];
    return v;
}

}  // namespace

TEST_CASE("products of tags") {
    const Pim i1 = Pim::tag(2, 1), i2 = Pim::tag(2, 2);
    CHECK((i1 * i1).is_zero());
    Pim p = (Pim(2, 1.0) + i1) * (Pim(2, 1.0) + i2);
    for (unsigned s = 0; s < 4; ++s) CHECK(p[s] == cplx(1));

    Pim a(1, cplx(2, 1)), b(1, cplx(-1, 3));
    a[1] = cplx(0.5, -1);
    b[1] = cplx(4, 2);
    Pim c = a * b;
    CHECK(c[0] == a[0] * b[0]);
    CHECK(c[1] == a[0] * b[1] + a[1] * b[0]);
}

TEST_CASE("mismatched tag counts are rejected") {
    CHECK_THROWS_AS(Pim::tag(2, 1) * Pim::tag(3, 1), TagMismatch);
}

TEST_CASE("inverse") {
    CHECK(pim_inv(Pim(0, 2.0)).scalar() == cplx(0.5));
    Pim u = Pim(1, 1.0) + Pim::tag(1, 1);
    Pim ui = pim_inv(u);
    CHECK(ui[0] == cplx(1));
    CHECK(ui[1] == cplx(-1));
    CHECK_THROWS_AS(pim_inv(Pim::tag(1, 1)), NotInvertible);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
        Pim a = random_pim(4, rng);
        a[0] += 1.5;
        Pim e = a * pim_inv(a);
        CHECK(std::abs(e[0] - 1.0) < 1e-15);
        for (unsigned s = 1; s < e.size(); ++s) CHECK(std::abs(e[s]) <= 1e-12);
    }
}

TEST_CASE("partition sums") {
    Pim a(3, 0.3);
    a[1] = 1.5;   // a1
    a[2] = -0.7;  // a2
    a[4] = 2.0;   // a3
    a[3] = 0.25;  // a12
    a[5] = -1.25; // a13
    a[6] = 0.5;   // a23
    a[7] = 0.125;
    CHECK(cdist(partition_sum(0b011, 2, a), a[1] * a[2]) == 0);
    CHECK(partition_sum(0b010, 1, a) == a[2]);
    CHECK(cdist(partition_sum(0b111, 2, a), a[1] * a[6] + a[2] * a[5] + a[4] * a[3]) < 1e-15);
    CHECK(cdist(partition_sum(0b111, 3, a), a[1] * a[2] * a[4]) < 1e-15);
    CHECK(partition_sum(0b111, 1, a) == a[7]);
    CHECK_THROWS_AS(partition_sum(0b011, 3, a), std::out_of_range);
    CHECK_THROWS_AS(partition_sum(0b011, 0, a), std::out_of_range);
}

TEST_CASE("partition sums agree with the Taylor expansion oracle for n <= 4") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 4; ++n) {
        Pim a = random_pim(n, rng);
        std::map<std::vector<int>, cplx> am;
        for (unsigned S = 1; S < a.size(); ++S) {
            std::vector<int> k;
            for (int i = 0; i < n; ++i)
                if (S >> i & 1u) k.push_back(i);
            am[k] = a[S];
        }
        for (unsigned K = 1; K < a.size(); ++K) {
            std::vector<int> k;
            for (int i = 0; i < n; ++i)
                if (K >> i & 1u) k.push_back(i);
            for (int r = 1; r <= std::popcount(K); ++r)
                CHECK(cdist(partition_sum(K, r, a), oracle::partition_sum_taylor(k, r, am)) < 1e-13);
        }
    }
}

TEST_CASE("lifting reproduces the sin and exp expansions") {
    const cplx a0(0.4, -0.2), a1(1.1, 0.3);
    Pim a(1, a0);
    a[1] = a1;
    Pim s = pim_apply(kernels::sin(), a);
    CHECK(cdist(s[0], std::sin(a0)) < 1e-15);
    CHECK(cdist(s[1], a1 * std::cos(a0)) < 1e-15);

    Pim b(2, 0.2);
    b[1] = 0.3;
    b[2] = -0.6;
    b[3] = 0.9;
    Pim e = pim_apply(kernels::exp(), b);
    const double ea = std::exp(0.2);
    CHECK(cdist(e[0], ea) < 1e-15);
    CHECK(cdist(e[1], ea * 0.3) < 1e-15);
    CHECK(cdist(e[2], ea * -0.6) < 1e-15);
    CHECK(cdist(e[3], ea * (0.9 + 0.3 * -0.6)) < 1e-15);
}

TEST_CASE("lifting matches finite differences") {
    std::mt19937_64 rng(5);
    struct K {
        AnalyticKernel k;
        cplx (*f)(cplx);
    };
    std::vector<K> ks = {{kernels::exp(), [](cplx x) { return std::exp(x); }},
                         {kernels::sin(), [](cplx x) { return std::sin(x); }},
                         {kernels::cos(), [](cplx x) { return std::cos(x); }},
                         {kernels::sinh(), [](cplx x) { return std::sinh(x); }},
                         {kernels::cosh(), [](cplx x) { return std::cosh(x); }},
                         {kernels::log(), [](cplx x) { return std::log(x); }},
                         {kernels::sqrt(), [](cplx x) { return std::sqrt(x); }}};
    for (auto& k : ks) {
        double worst = 0;
        for (int t = 0; t < 100; ++t) {
            Pim a = random_pim(3, rng, 0.5);
            a[0] += 1.5;
            Pim got = pim_apply(k.k, a);
            for (unsigned K = 1; K < got.size(); ++K) {
                cplx fd = oracle::mixed_partial_rich(k.f, coeffs(a), K, 3, 1e-2);
                worst = std::max(worst, std::abs(got[K] - fd) / std::max(1.0, std::abs(got[K])));
            }
        }
        INFO(k.k.name);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("lifting properties") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        Pim a = random_pim(3, rng), b = random_pim(3, rng);
        Pim lhs = pim_apply(kernels::exp(), a + b), rhs = pim_apply(kernels::exp(), a) * pim_apply(kernels::exp(), b);
        CHECK(max_diff(lhs, rhs) <= 1e-10 * std::max(1.0, rhs.max_abs()));
        Pim s = pim_apply(kernels::sin(), a), c = pim_apply(kernels::cos(), a);
        CHECK(max_diff(s * s + c * c, Pim(3, 1.0)) <= 1e-10);
        Pim u = random_pim(3, rng, 0.2) + 1.0;
        CHECK(max_diff(pim_apply(kernels::exp(), pim_apply(kernels::log(), u)), u) <= 1e-8);
    }
}

TEST_CASE("even kernels") {
    // sinh(s)/s at x = s^2
    const cplx s(0.7, 0.2);
    CHECK(cdist(kernels::shc_sq().deriv(0, s * s), std::sinh(s) / s) < 1e-15);
    CHECK(cdist(kernels::ch_sq().deriv(0, s * s), std::cosh(s)) < 1e-15);
    CHECK(cdist(kernels::sinc_sq().deriv(0, s * s), std::sin(s) / s) < 1e-15);
    CHECK(cdist(kernels::thc_sq().deriv(0, s * s), std::tanh(s) / s) < 1e-14);
    // derivative in x: d/dx cosh(sqrt x) = sinh(s)/(2s)
    CHECK(cdist(kernels::ch_sq().deriv(1, s * s), std::sinh(s) / (2.0 * s)) < 1e-14);
}

TEST_CASE("J factors") {
    const Signature s = Signature::parse("n,1");
    CHECK(jfactor(s, 2, 2).scalar() == cplx(1));
    Pim J13 = jfactor(s, 1, 3);
    CHECK(J13[1] == cplx(1));
    CHECK(J13[0] == cplx(0));
    CHECK(jfactor(Signature::parse("i,i"), 1, 3).scalar() == cplx(-1));
    CHECK(jfactor(s, 3, 1).scalar() == cplx(1));
    CHECK_THROWS_AS(jfactor(s, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(jfactor(s, 1, 4), std::out_of_range);
    CHECK(Signature::parse("1, n").str() == "1,n");
    CHECK_THROWS_AS(Signature::parse("1,x"), std::invalid_argument);
    CHECK(Signature::parse("i,1").quantum_allowed() == false);
}

TEST_CASE("scaled trig") {
    const double phi = 0.83;
    auto t = scaled_trig(Pim::tag(1, 1), phi);
    CHECK(t.sin[1] == cplx(phi));
    CHECK(t.sin[0] == cplx(0));
    CHECK(t.sinc.scalar() == cplx(phi));
    CHECK(t.cos.scalar() == cplx(1));

    auto o = scaled_trig(Pim(1, 1.0), phi);
    CHECK(o.sin.scalar() == cplx(std::sin(phi)));
    CHECK(o.sinc.scalar() == cplx(std::sin(phi)));
    CHECK(o.cos.scalar() == cplx(std::cos(phi)));

    auto h = scaled_trig(Pim(1, cplx(0, 1)), phi);
    CHECK(cdist(h.sin.scalar(), cplx(0, std::sinh(phi))) < 1e-15);
    CHECK(cdist(h.sinc.scalar(), cplx(std::sinh(phi))) < 1e-15);
    CHECK(cdist(h.cos.scalar(), cplx(std::cosh(phi))) < 1e-15);

    // i * iota: j^2 = 0
    auto m = scaled_trig(Pim::tag(1, 1) * cplx(0, 1), phi);
    CHECK(m.sinc.scalar() == cplx(phi));
    CHECK(m.sin[1] == cplx(0, phi));
}

TEST_CASE("grassmann embedding") {
    auto r = verify_grassmann_embedding(2, 100, 99);
    CHECK(r.pass);
    CHECK(r.detail["mismatches"] == 0);

    // n=2: iota1*iota2 = xi1 xi3 xi2 xi4 with the independent oracle's sign
    auto g = oracle::gmul(oracle::gembed(coeffs(Pim::tag(2, 1)), 2), oracle::gembed(coeffs(Pim::tag(2, 2)), 2));
    auto h = oracle::gembed(coeffs(Pim::tag(2, 1) * Pim::tag(2, 2)), 2);
    CHECK(g == h);
    REQUIRE(h.size() == 1);
    CHECK(h.begin()->first == std::vector<int>{1, 2, 3, 4});
    CHECK(h.begin()->second == cplx(-1));

    std::mt19937_64 rng(17);
    int mism = 0;
    for (int t = 0; t < 100; ++t) {
        Pim a = random_integer_pim(2, rng), b = random_integer_pim(2, rng);
        if (oracle::gmul(oracle::gembed(coeffs(a), 2), oracle::gembed(coeffs(b), 2)) != oracle::gembed(coeffs(a * b), 2)) ++mism;
    }
    CHECK(mism == 0);
}

TEST_CASE("element syntax") {
    Pim p = parse_pim("1 + 2*i1 - 0.5*i1*i2");
    CHECK(p.n() == 2);
    CHECK(p[0] == cplx(1));
    CHECK(p[1] == cplx(2));
    CHECK(p[3] == cplx(-0.5));
    Pim q = parse_pim("(1+2j)*i1", 1);
    CHECK(q[1] == cplx(1, 2));
    CHECK(parse_pim("i1*i1").is_zero());
    CHECK_THROWS_AS(parse_pim("1 + * 2"), std::invalid_argument);
    CHECK(parse_complex("0.61+0.29i") == cplx(0.61, 0.29));
    CHECK(parse_complex("-2e-1-3j") == cplx(-0.2, -3));
    CHECK(parse_complex("i") == cplx(0, 1));
    CHECK(parse_complex("0.37") == cplx(0.37));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK(parse_pim(p.str()).str() == p.str());
}

TEST_CASE("pimenov suite passes") {
    for (const auto& r : verify_pimenov(1)) {
        INFO(r.check << " residual " << r.residual);
        CHECK(r.pass);
    }
}
