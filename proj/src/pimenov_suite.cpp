#include "ckq/pimenov_suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace ckq {

Pim random_integer_pim(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-9, 9);
    Pim p(n);
    for (unsigned s = 0; s < p.size(); ++s) p[s] = cplx(d(rng), d(rng));
    return p;
}

Pim random_pim(int n, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Pim p(n);
    for (unsigned s = 0; s < p.size(); ++s) p[s] = cplx(d(rng), d(rng));
    return p;
}

namespace {

// Grassmann algebra on 2n generators; basis monomials are increasing products, keyed by bitmask.
using Grass = std::map<unsigned, cplx>;

int reorder_sign(unsigned A, unsigned B) {
    // moving each generator of B leftwards past the generators of A with larger index
    int swaps = 0;
    for (unsigned b = B; b; b &= b - 1) {
        unsigned low = b & (~b + 1);
        swaps += std::popcount(A & ~(low | (low - 1)));
    }
    return swaps % 2 ? -1 : 1;
}

Grass gmul(const Grass& x, const Grass& y) {
    Grass r;
    for (const auto& [A, a] : x)
        for (const auto& [B, b] : y) {
            if (A & B) continue;
            r[A | B] += double(reorder_sign(A, B)) * a * b;
        }
    return r;
}

Grass embed(const Pim& p) {
    const int n = p.n();
    Grass out;
    for (unsigned S = 0; S < p.size(); ++S) {
        if (p[S] == cplx(0)) continue;
        Grass mono{{0u, p[S]}};
        for (int k = 0; k < n; ++k)
            if (S >> k & 1u) mono = gmul(mono, Grass{{(1u << k) | (1u << (n + k)), 1.0}});
        for (const auto& [m, c] : mono) out[m] += c;
    }
    return out;
}


}  // namespace

Report verify_grassmann_embedding(int n, int trials, std::uint64_t seed) {
    if (n < 1 || n > 4) throw std::invalid_argument("grassmann oracle supports 1 <= n <= 4");
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    double dev = 0;
    for (int t = 0; t < trials; ++t) {
        const Pim a = random_integer_pim(n, rng), b = random_integer_pim(n, rng);
        Grass lhs = embed(a * b), rhs = gmul(embed(a), embed(b));
        std::map<unsigned, cplx> diff;
        for (auto& [m, c] : lhs) diff[m] += c;
        for (auto& [m, c] : rhs) diff[m] -= c;
        double d = 0;
        for (auto& [m, c] : diff) d = std::max(d, std::abs(c));
        if (d != 0) ++mismatches;
        dev = std::max(dev, d);
    }
    Report r;
    r.check = "pimenov.grassmann_embedding";
    r.inputs = {{"n", n}, {"trials", trials}};
    r.residual = dev;
    r.tolerance = 0;
    r.detail = {{"mismatches", mismatches}};
    r.conditions = {{"zero_mismatches", mismatches == 0}};
    return r.finish();
}

std::vector<Report> verify_pimenov(std::uint64_t seed) {
    std::vector<Report> out;
    std::mt19937_64 rng(seed);
    auto add = [&](const std::string& name, json inputs, double res, double tol) {
        Report r;
        r.check = name;
        r.inputs = std::move(inputs);
        r.residual = res;
        r.tolerance = tol;
        out.push_back(r.finish());
    };
    const int n = 3;

    double ring = 0;
    for (int t = 0; t < 1000; ++t) {
        Pim a = random_integer_pim(n, rng), b = random_integer_pim(n, rng), c = random_integer_pim(n, rng);
        ring = std::max(ring, max_diff(a * b, b * a));
        ring = std::max(ring, max_diff((a * b) * c, a * (b * c)));
        ring = std::max(ring, max_diff(a * (b + c), a * b + a * c));
    }
    add("pimenov.ring_axioms", {{"n", n}, {"triples", 1000}}, ring, 0.0);

    double inv0 = 0, invn = 0;
    for (int t = 0; t < 1000; ++t) {
        Pim a = random_pim(n, rng);
        a[0] += 2.0;
        Pim e = a * pim_inv(a);
        inv0 = std::max(inv0, std::abs(e[0] - 1.0));
        for (unsigned s = 1; s < e.size(); ++s) invn = std::max(invn, std::abs(e[s]));
    }
    add("pimenov.inverse_scalar_part", {{"n", n}, {"units", 1000}}, inv0, 1e-15);
    add("pimenov.inverse_nilpotent_part", {{"n", n}, {"units", 1000}}, invn, 1e-12);

    auto rel = [](const Pim& x, const Pim& y) { return max_diff(x, y) / std::max(1.0, y.max_abs()); };
    double hom = 0, comp = 0, pyth = 0, taylor = 0;
    const auto E = kernels::exp(), L = kernels::log(), S = kernels::sin(), C = kernels::cos();
    for (int t = 0; t < 200; ++t) {
        Pim a = random_pim(n, rng), b = random_pim(n, rng);
        hom = std::max(hom, rel(pim_apply(E, a + b), pim_apply(E, a) * pim_apply(E, b)));
        Pim u = random_pim(n, rng, 0.3) + 1.0;
        comp = std::max(comp, rel(pim_apply(E, pim_apply(L, u)), u));
        Pim s = pim_apply(S, a), c = pim_apply(C, a);
        pyth = std::max(pyth, max_diff(s * s + c * c, Pim(n, 1.0)));
        // f(a0 + eps) = sum_k f^(k)(a0) eps^k / k!, eps nilpotent
        Pim eps = a;
        eps[0] = 0;
        Pim acc(n, 0.0), pw(n, 1.0);
        double fact = 1;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) {
                pw = pw * eps;
                fact *= k;
            }
            acc += pw * (E.deriv(k, a.scalar()) / fact);
        }
        taylor = std::max(taylor, rel(pim_apply(E, a), acc));
    }
    add("pimenov.exp_homomorphism", {{"n", n}}, hom, 1e-10);
    add("pimenov.exp_log_composition", {{"n", n}}, comp, 1e-8);
    add("pimenov.sin2_plus_cos2", {{"n", n}}, pyth, 1e-10);
    add("pimenov.taylor_composition", {{"n", n}}, taylor, 1e-10);

    // sin(a0 + i1 a1) and exp over D_2
    {
        const cplx a0(0.3, 0.1), a1(0.7, -0.2), a2(-0.4, 0.5), a12(0.25, 0.05);
        Pim a(1, a0);
        a[1] = a1;
        Pim s = pim_apply(S, a);
        double e33 = std::max(std::abs(s[0] - std::sin(a0)), std::abs(s[1] - a1 * std::cos(a0)));
        Pim b(2, a0);
        b[1] = a1;
        b[2] = a2;
        b[3] = a12;
        Pim e = pim_apply(E, b);
        const cplx ea = std::exp(a0);
        double e34 = std::max({std::abs(e[0] - ea), std::abs(e[1] - ea * a1), std::abs(e[2] - ea * a2),
                               std::abs(e[3] - ea * (a12 + a1 * a2))});
        add("pimenov.lifting_sin_dual", {{"n", 1}}, e33, 1e-12);
        add("pimenov.lifting_exp_d2", {{"n", 2}}, e34, 1e-12);
    }

    for (int gn = 1; gn <= 4; ++gn) out.push_back(verify_grassmann_embedding(gn, 100, seed + gn));
    return out;
}

}  // namespace ckq
