#pragma once

#include <random>
#include <string>
#include <vector>

#include "ckq/dmatrix.hpp"
#include "ckq/report.hpp"

namespace ckq {

struct PoleEncountered : std::domain_error {
    using std::domain_error::domain_error;
};

// Special: Cartesian realization over D with entries J~_kp * real (j-orthogonal).
// Real:    the real-entry form with -J sin Jφ above and J⁻¹ sin Jφ below the diagonal.
enum class Form { Special, Real };

DMat elementary_rotation(const Signature& sig, int mu, int nu, double phi, Form form = Form::Special);
// Product of `factors` elementary rotations with angles uniform in [-1, 1].
DMat random_group_element(const Signature& sig, int factors, std::mt19937_64& rng);

Pim ck_det(const DMat& M);

struct OrthoResidual {
    double aat = 0, ata = 0;
    double max() const { return aat > ata ? aat : ata; }
};
OrthoResidual verify_j_orthogonality(const DMat& M);

// J~_kp, 1-based
Pim jtilde(const Signature& sig, int k, int p);
// max deviation from the shape J~_kp * (real)
double special_shape_defect(const Signature& sig, const DMat& M);

struct CKVector {
    std::vector<Pim> x;
    Basis basis = Basis::Cartesian;
};
CKVector cartesian_vector(const Signature& sig, const std::vector<double>& reals);
CKVector operator*(const DMat& M, const CKVector& v);
Pim quadratic_form(const CKVector& v);
Pim real_quadratic_form(const Signature& sig, const std::vector<double>& reals);

DMat c0_matrix(int N, int n);

struct Symplectic {
    DMat D, Dinv;
};
Symplectic symplectic_transform(int N, int n);
DMat to_symplectic(const DMat& A);
CKVector to_symplectic(const CKVector& x);

// 1-d constant-curvature geometry, ω ∈ {1, 0, -1}
double translate(int omega, double xi, double a);
double distance(int omega, double xa, double xb);

struct ContractionRow {
    double eps, err0, err1, ratio0, ratio1;
};
struct ContractionDemo {
    double exact0, exact1;  // x0, x1 + φ x0 from ι arithmetic
    std::vector<ContractionRow> rows;
};
ContractionDemo contraction_limit_demo(double phi, double x0, double x1, const std::vector<double>& eps);

struct OrbitPoint {
    double phi, x0, x1;
};
std::vector<OrbitPoint> orbit_sample(const std::string& plane, double x0, double x1, const std::vector<double>& phis);
double orbit_invariant(const std::string& plane, double x0, double x1);

// property suite over all 3^{N-1} signatures
std::vector<Report> verify_classical(int N, std::uint64_t seed, int trials = 5);

}  // namespace ckq
