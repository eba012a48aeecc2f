#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "ckq/classical.hpp"
#include "ckq/dual.hpp"
#include "ckq/frt.hpp"
#include "ckq/pimenov.hpp"
#include "ckq/pimenov_suite.hpp"
#include "ckq/sow.hpp"
#include "oracles/nilpotent.hpp"
#include "oracles/rank.hpp"
#include "oracles/rmatrix.hpp"

using namespace ckq;

namespace {

const std::vector<std::string> kQuantum = {"1,1", "n,1", "1,n", "n,n"};
const std::vector<std::string> kContracted = {"n,1", "1,n", "n,n"};
const std::vector<cplx> kV = {cplx(0.37), cplx(0.61, 0.29)};
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [" << what << "]";
        }
    }
};

std::string sci(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", x);
    return b;
}

Outcome lifting() {
    Outcome o;
    for (const Report& r : verify_pimenov(kSeed))
        if (r.check == "pimenov.lifting_sin_dual" || r.check == "pimenov.lifting_exp_d2")
            o.require(r.pass, r.check + " residual " + sci(r.residual));

    std::mt19937_64 rng(kSeed);
    struct K {
        AnalyticKernel k;
        cplx (*f)(cplx);
    };
    const std::vector<K> ks = {{kernels::exp(), [](cplx x) { return std::exp(x); }},
                               {kernels::sin(), [](cplx x) { return std::sin(x); }},
                               {kernels::cos(), [](cplx x) { return std::cos(x); }},
                               {kernels::sinh(), [](cplx x) { return std::sinh(x); }},
                               {kernels::cosh(), [](cplx x) { return std::cosh(x); }},
                               {kernels::log(), [](cplx x) { return std::log(x); }},
                               {kernels::sqrt(), [](cplx x) { return std::sqrt(x); }}};
    double worst = 0;
    for (const auto& k : ks)
        for (int t = 0; t < 100; ++t) {
            Pim a = random_pim(3, rng, 0.5);
            a[0] += 1.5;
            const Pim got = pim_apply(k.k, a);
            std::vector<cplx> c(a.size());
            for (unsigned s = 0; s < a.size(); ++s) c[s] = a[s];
            for (unsigned K = 1; K < got.size(); ++K) {
                const cplx fd = oracle::mixed_partial_rich(k.f, c, K, 3, 1e-2);
                worst = std::max(worst, std::abs(got[K] - fd) / std::max(1.0, std::abs(got[K])));
            }
        }
    o.require(worst <= 1e-6, "finite differences " + sci(worst));
    o.note << " fd_rel=" << sci(worst);
    return o;
}

Outcome grassmann() {
    Outcome o;
    const Report r = verify_grassmann_embedding(2, 100, kSeed);
    o.require(r.pass && r.residual == 0, "mismatches " + sci(r.residual));
    o.note << " mismatches=" << r.residual;
    return o;
}

Outcome classical_groups() {
    Outcome o;
    for (int N : {2, 3, 4})
        for (const Report& r : verify_classical(N, kSeed)) {
            std::string where = r.check + " N=" + std::to_string(N);
            if (r.inputs.contains("signature")) where += " sig=" + r.inputs["signature"].get<std::string>();
            o.require(r.pass, where + " residual " + sci(r.residual));
        }
    return o;
}

Outcome geometry() {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    for (int omega : {1, 0, -1}) {
        double comp = 0, inv = 0;
        for (int t = 0; t < 1000; ++t) {
            const double xi = U(rng), a = U(rng), b = U(rng), xa = U(rng), xb = U(rng);
            const double lhs = translate(omega, translate(omega, xi, a), b);
            const double rhs = translate(omega, xi, (a + b) / (1 - omega * a * b));
            comp = std::max(comp, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            const double ta = translate(omega, xa, a), tb = translate(omega, xb, a);
            if (omega == -1 && (std::abs(ta) >= 1 || std::abs(tb) >= 1)) continue;
            inv = std::max(inv, std::abs(distance(omega, ta, tb) - distance(omega, xa, xb)));
        }
        o.require(comp <= 1e-12, "composition omega=" + std::to_string(omega) + " " + sci(comp));
        o.require(inv <= 1e-12, "distance omega=" + std::to_string(omega) + " " + sci(inv));
    }
    std::vector<double> eps;
    for (int k = 0; k <= 6; ++k) eps.push_back(0.1 / (1 << k));
    const ContractionDemo d = contraction_limit_demo(0.8, 1.3, -0.4, eps);
    const double r0 = d.rows.back().ratio0, r1 = d.rows.back().ratio1;
    o.require(r0 >= 0.2 && r0 <= 0.3 && r1 >= 0.2 && r1 <= 0.3, "error ratio");
    o.note << " ratio=" << r0 << "," << r1;
    return o;
}

Eigen::MatrixXcd scalar_part(const DMat& M) {
    Eigen::MatrixXcd E(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) E(i, j) = M(i, j)[0];
    return E;
}

Outcome rmatrix_golden() {
    Outcome o;
    for (cplx v : kV) {
        const double d = (scalar_part(rmatrix3(Signature::parse("1,1"), v).R) - oracle::printed_r(v)).cwiseAbs().maxCoeff();
        o.require(d <= 1e-12, "(1,1) entries " + sci(d));
    }
    for (const auto& s : kContracted) {
        const Signature sig = Signature::parse(s);
        const int n = sig.tags();
        const double t = (scalar_part(rmatrix_tilde(n)) - oracle::printed_rtilde()).cwiseAbs().maxCoeff();
        o.require(t == 0, s + " R~ entries");
        for (cplx v : kV) {
            const DMat expect = DMat::identity(9, n) + (v * quantum_J(sig)) * rmatrix_tilde(n);
            o.require(max_diff(rmatrix3(sig, v).R, expect) == 0, s + " R - (I + Jv R~) not 0");
        }
    }
    return o;
}

Outcome qybe() {
    Outcome o;
    double worst = 0;
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            const Report r = verify_qybe(rmatrix3(Signature::parse(s), v));
            worst = std::max(worst, r.residual);
            o.require(r.pass, s + " residual " + sci(r.residual));
        }
    const Report bad = verify_qybe(corrupt(rmatrix3(Signature::parse("1,1"), 0.37), 4, 2, 1.1));
    o.require(!bad.pass, "corrupted R passes");
    o.note << " max=" << sci(worst) << " corrupted=" << sci(bad.residual);
    return o;
}

Outcome rtt_quotient() {
    Outcome o;
    for (const auto& s : kQuantum) {
        const Signature sig = Signature::parse(s);
        for (cplx v : kV) {
            const FrtSystem f = build_frt(sig, v);
            const Report c = verify_confluence(f);
            const long words = c.detail["words"].get<long>();
            o.require(c.pass, s + " confluence " + sci(c.residual));
            o.require(words >= 729, s + " words " + std::to_string(words));
            const int count = rtt_relation_count(f.R);
            const int rank = oracle::ideal_rank(f.rtt.relations, sig.nil_mask(), 2, 9);
            o.require(count == rank, s + " count " + std::to_string(count) + " vs oracle " + std::to_string(rank));
            if (v == kV[0]) o.note << " " << s << ":" << count;
        }
    }
    return o;
}

Outcome group_hopf() {
    Outcome o;
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            const FrtSystem f = build_frt(Signature::parse(s), v);
            const Report a = verify_antipode(f), c = verify_coproduct(f), e = verify_counit(f);
            o.require(a.pass && a.residual <= 1e-9, s + " antipode " + sci(a.residual));
            o.require(c.pass && c.residual <= 1e-9, s + " coproduct " + sci(c.residual));
            o.require(e.pass && e.residual == 0, s + " counit " + sci(e.residual));
        }
    return o;
}

Outcome contraction() {
    Outcome o;
    for (const auto& s : kContracted)
        for (cplx v : kV) {
            const Report r = verify_contraction_transform(Signature::parse(s), v);
            o.require(r.pass && r.residual <= 1e-9, s + " residual " + sci(r.residual));
        }
    return o;
}

Outcome pairing() {
    Outcome o;
    std::string variant;
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            const Report r = verify_pairing_table(Signature::parse(s), v);
            if (!r.pass) {
                std::string which;
                for (const auto& m : r.detail["mismatches"]) which += m["l"].get<std::string>() + "(" + m["t"].get<std::string>() + ") ";
                if (!which.empty()) which.pop_back();
                o.require(false, s + " v=" + format_complex(v, 3) + " " + which);
            }
            if (variant.empty() && !r.detail["asymmetry_matching_variants"].empty())
                variant = r.detail["asymmetry_matching_variants"][0].get<std::string>();
        }
    o.note << " asymmetric pair matches: " << (variant.empty() ? "none" : variant);
    return o;
}

Outcome dual_algebra() {
    Outcome o;
    for (const auto& s : kQuantum)
        for (cplx v : kV) {
            const Signature sig = Signature::parse(s);
            const Report l = verify_L_relations(sig, v), c = verify_dual_commutators(sig, v);
            o.require(l.pass && l.residual <= 1e-9, s + " L relations " + sci(l.residual));
            o.require(c.pass && c.residual <= 1e-9, s + " commutators " + sci(c.residual));
        }
    return o;
}

Outcome sow_hopf() {
    Outcome o;
    for (const auto& s : kQuantum) {
        const Signature sig = Signature::parse(s);
        const Report r = verify_sow_hopf(sig, 8);
        o.require(r.pass && r.residual <= 1e-9, s + " residual " + sci(r.residual));
        const Report d = verify_truncation_decay("sow_hopf", sig);
        o.require(d.pass, s + " not non-increasing 6->10");
    }
    return o;
}

Outcome isomorphism() {
    Outcome o;
    for (const auto& s : kQuantum) {
        const Signature sig = Signature::parse(s);
        const Report r = verify_duality_isomorphism(sig, 8);
        o.require(r.pass, s + " residual " + sci(r.residual));
        if (s == "1,1") {
            o.require(r.residual <= 1e-8, s + " residual " + sci(r.residual));
            o.note << " (1,1)=" << sci(r.residual);
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"function lifting", lifting},
        {"Grassmann embedding", grassmann},
        {"classical groups", classical_groups},
        {"1-d geometry and contraction limit", geometry},
        {"R-matrix golden table", rmatrix_golden},
        {"QYBE", qybe},
        {"RTT quotient well-definedness", rtt_quotient},
        {"Hopf axioms, group side", group_hopf},
        {"contraction transform", contraction},
        {"pairing golden table", pairing},
        {"dual algebra", dual_algebra},
        {"so_w Hopf suite", sow_hopf},
        {"duality isomorphism", isomorphism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const Stopwatch sw;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " exception: " << e.what();
        }
        const double ms = sw.ms();
        o.require(ms < 60000, "over 60 s");
        failed += !o.pass;
        std::printf("criterion %2zu: %s  %s (%.0f ms)%s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(), ms,
                    o.note.str().c_str());
    }
    return failed ? 1 : 0;
}
