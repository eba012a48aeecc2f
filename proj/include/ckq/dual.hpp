#pragma once

#include <string>
#include <vector>

#include "ckq/dmatrix.hpp"
#include "ckq/frt.hpp"
#include "ckq/report.hpp"

namespace ckq {

// R+ = P R P, R- = R^{-1}, with <L±_ij, T_kl> = R±[(i,k),(j,l)] (row (i-1)*3+k, column (j-1)*3+l).
struct DualFunctionals {
    Signature sig;
    cplx v = 0;
    DMat R, Rp, Rm, P;
};

DMat flip_matrix(int N, int tags);
// inverse of a lower-triangular matrix with unit-valued diagonal, by forward substitution
DMat lower_triangular_inverse(const DMat& L);
DualFunctionals build_functionals(const Signature& sig, cplx v);
DualFunctionals build_functionals(const RMatrix& R);

// ρ(L±_ij) as a 3x3 matrix, i, j 0-based
DMat rho_L(const DualFunctionals& d, bool plus, int i, int j);

// Functionals of the table: l11, l12, l~12, l21, l~21, l13, l~13.
// Primed forms at z = Jv:
//   l'12 = (L+12 - L-32)/2,  l~'12 = i(L+12 + L-32)/2, likewise 21 from (L+23, L-21) and 13 from (L+13, L-31).
// For a signature j: l12 = j1 l'12, l~12 = j2 l~'12, l21 = j1 l'21, l~21 = j2 l~'21, l13 = l'13, l~13 = J l~'13.
std::vector<std::string> functional_names();
DMat rho_functional(const DualFunctionals& d, const std::string& name);
DMat rho_functional_primed(const DualFunctionals& d, const std::string& name);
// ⟨l'(name), t'(component)⟩ at z = Jv. Components are read off T with the upper off-diagonal entries negated:
//   t'12 = (-T12 + T32)/2, t~'12 = (T12 + T32)/(2i), and the same pattern for (T13, T31), (T23, T21).
Pim pairing_primed(const DualFunctionals& d, const std::string& l, const std::string& t);

// j-weights: l = m_l l', t' = m_t t
Pim functional_weight(const Signature& sig, const std::string& l);
Pim component_weight(const Signature& sig, const std::string& t);

// A printed table value c · j1^e1 · j2^e2 · f(Jv) with f = Σ a_m e^{α_m z}.
struct ExpSum {
    std::vector<std::pair<cplx, double>> terms;  // (a_m, α_m)
    cplx operator()(cplx z) const;
    cplx taylor(int k) const;
};
struct PrintedPairing {
    std::string l, t;
    cplx coef;
    int e1 = 0, e2 = 0;
    ExpSum f;
    std::string text;
};
const std::vector<PrintedPairing>& printed_pairings();

// Slot values for evaluating printed entries: nilpotent tags or plain numbers.
struct SlotAssignment {
    int tags = 0;
    std::vector<bool> nil;
    std::vector<double> value;  // used when !nil
    static SlotAssignment from(const Signature& sig);
    static SlotAssignment numeric(double j1, double j2);
};
// c · j1^a1 · j2^a2 · f(Jv); throws std::domain_error when a negative power of a nilpotent slot survives
Pim evaluate_printed(const SlotAssignment& s, cplx coef, int a1, int a2, const ExpSum& f, cplx v);

struct PairingRow {
    std::string l, t;
    bool listed = false;
    std::string printed;
    Pim lhs, rhs;  // m_t · printed, m_l · ⟨l', t'⟩
    double diff = 0;
};
std::vector<PairingRow> pairing_table(const Signature& sig, cplx v);
// same rows evaluated with numeric slot values (j1, j2), bypassing signatures
std::vector<PairingRow> pairing_table_numeric(double j1, double j2, cplx v);

Report verify_pairing_table(const Signature& sig, cplx v);
Report verify_L_relations(const Signature& sig, cplx v);
Report verify_dual_commutators(const Signature& sig, cplx v);
// ρ(u1 u2 u3) from pairing against Δ²T versus ρ(u1)ρ(u2)ρ(u3) on random functional words
Report verify_rho_homomorphism(const Signature& sig, cplx v, unsigned long long seed, int words = 50);

// residuals of the three commutators after the pairing table, in ρ
std::vector<DMat> dual_commutator_residuals(const DualFunctionals& d);

std::vector<Report> verify_dual_rep(const Signature& sig, const std::vector<cplx>& vs, unsigned long long seed);

}  // namespace ckq
