#pragma once

#include <string>
#include <vector>

#include "ckq/dmatrix.hpp"
#include "ckq/free_algebra.hpp"
#include "ckq/report.hpp"

namespace ckq {

struct QuantumSignatureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// J = j1 j2 for a quantum signature (slots ONE or NIL, N = 3)
Pim quantum_J(const Signature& sig);
void require_quantum(const Signature& sig);

struct RMatrix {
    DMat R;  // 9x9, row/column (i-1)*3+k
    Signature sig;
    cplx v = 0;
};

// Standard SO_q(3) R-matrix at a D-valued z.
DMat rmatrix_q(const Pim& z);
RMatrix rmatrix3(const Signature& sig, cplx v);
// R~ with R = I + Jv R~ for contracted signatures
DMat rmatrix_tilde(int tags);
// negative-control helper: multiplies entry (row, col) (1-based) by `factor`
RMatrix corrupt(RMatrix R, int row, int col, cplx factor);  // 1-based entry scaled by factor

struct CMatrix {
    DMat C;
    Signature sig;
    cplx v = 0;
};
// C0 q^rho at a D-valued z, rho per the odd/even N pattern
DMat cmatrix_q(int N, const Pim& z);
// C0 q^rho with q = e^{Jv}; N is taken from the signature
CMatrix cmatrix(const Signature& sig, cplx v);

double qybe_check(const DMat& R);

// A 3x3 generating matrix whose entries are linear forms in an alphabet.
struct TForm {
    int tags = 0;
    unsigned iota_mask = ~0u;  // nilpotent tags of the signature
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<int, Pim>>> entry;  // 9 entries, row-major

    int alphabet() const { return static_cast<int>(names.size()); }
    FreeElement at(int a, int b) const;  // 0-based
};
// T_ik themselves as the nine generators t11..t33
TForm tform_entries(int tags, unsigned iota_mask = ~0u);
// the decomposition T(j) into t11, t~11, t12, t~12, t13, t~13, t21, t~21, t22 with j-weights
TForm tform_components(const Signature& sig);
std::vector<std::string> component_names();
// replaces generator g by images[g] (all images share one alphabet)
FreeElement substitute(const FreeElement& x, const std::vector<FreeElement>& images);

RelationSet rtt_relations(const DMat& R, const TForm& T);
RelationSet rtt_relations(const RMatrix& R);
RelationSet orthogonality_relations(const DMat& C, const TForm& T);
RelationSet orthogonality_relations(const CMatrix& C);

// Hopf maps on the entry alphabet
FreeElement coproduct(const FreeElement& x);          // ΔT = T ⊗̇ T, into the doubled alphabet
Pim counit(const FreeElement& x);                      // ε(T) = I
FreeElement antipode(const FreeElement& x, const DMat& C);  // S(T) = C Tᵗ C⁻¹, antihomomorphism

// Relation data and reduction system for one (signature, v) sample.
struct FrtSystem {
    RMatrix R;
    CMatrix C;
    RelationSet rtt, orth, all;
    ReductionSystem sys;
};
FrtSystem build_frt(const Signature& sig, cplx v, int closure_degree = 3);
FrtSystem build_frt(const RMatrix& R, int closure_degree = 3);

Report verify_qybe(const RMatrix& R);
// confluence of the closure-3 system plus flatness against v = 0
Report verify_confluence(const FrtSystem& f);
Report verify_antipode(const FrtSystem& f);
Report verify_coproduct(const FrtSystem& f);
Report verify_counit(const FrtSystem& f);
Report verify_contraction_transform(const Signature& sig, cplx v);
// independent degree-2 RTT relation count (rank of the ι-closure)
int rtt_relation_count(const RMatrix& R);

std::vector<Report> verify_frt(const Signature& sig, const std::vector<cplx>& vs);

}  // namespace ckq
