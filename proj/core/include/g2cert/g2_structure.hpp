#pragma once

#include "g2cert/lie_algebra.hpp"
#include "g2cert/model_forms.hpp"

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace g2cert {

/* Metric and volume induced by a positive 3-form on a 7-dim space via
 * (e_i -| phi) ^ (e_j -| phi) ^ phi = 6 B_ij e^{1..7}, g = (det B)^{-1/9} B.
 * Throws std::invalid_argument("not a positive 3-form") when B is not
 * positive definite. */
struct MetricVolume {
  Eigen::MatrixXd metric;
  double volume_coeff; // vol = volume_coeff * e^{1..7}
};
MetricVolume metric_from_phi(const KForm& phi);

struct CurvatureData {
  Eigen::MatrixXd ricci; // Ricci endomorphism = tensor in the orthonormal frame
  double scalar;
  Eigen::VectorXd mean_curvature; // <H, x> = tr ad x
};

/* Conjugate the bracket onto a metric-orthonormal basis (columns of P with
 * P^T G P = I): mu'(x, y) = P^{-1} [Px, Py]. Identity metric returns a copy. */
LieAlgebra orthonormalize(const LieAlgebra& l, const Eigen::MatrixXd& metric);

CurvatureData ricci(const LieAlgebra& l, const Eigen::MatrixXd& metric);

/* A closed G2-structure on a 7-dim Lie algebra. All caches are computed at
 * construction; the object is immutable afterwards. Forms live on a frame
 * carrying the induced metric so Hodge duals are metric-aware. */
class G2Structure {
public:
  /* Throws "phi is not closed" when |d phi| > closed_tol, and propagates
   * "not a positive 3-form" from the metric computation. */
  G2Structure(LieAlgebra algebra, const KForm& phi, double closed_tol = 1e-9);
  /* The reference phi of Eq. phi = omega ^ e^7 + rho^+. */
  explicit G2Structure(LieAlgebra algebra, double closed_tol = 1e-9);

  const LieAlgebra& algebra() const { return algebra_; }
  const KForm& phi() const { return phi_; }
  const Eigen::MatrixXd& metric() const { return metric_; }
  double volume_coeff() const { return volume_coeff_; }
  const KForm& torsion() const { return torsion_; }
  double torsion_norm2() const { return torsion_norm2_; }
  /* |d*phi - tau ^ phi|, the paper identity backing tau = -*d*phi. */
  double torsion_identity_residual() const { return torsion_identity_residual_; }
  double closedness_residual() const { return closedness_residual_; }

  KForm d(const KForm& a) const { return algebra_.ce_d(a); }
  KForm star(const KForm& a) const;

private:
  LieAlgebra algebra_;
  FramePtr metric_frame_;
  KForm phi_;
  Eigen::MatrixXd metric_;
  double volume_coeff_;
  KForm torsion_;
  double torsion_norm2_;
  double torsion_identity_residual_;
  double closedness_residual_;
};

/* |d tau - (1/6)|tau|^2 phi - (1/6) * (tau ^ tau)| */
double erp_residual(const G2Structure& s);

/* scal^2 - 3 |Ric|^2; zero exactly in the extremally-pinched case. */
double pinching_gap(const CurvatureData& c);

struct SolitonResult {
  bool success;
  double coefficient; // c in Ric = c Id + D, or lambda in d tau = lambda phi + Theta(D) phi
  Eigen::MatrixXd derivation;
  double residual;
};
/* Least-squares for Ric = c Id + D over D in Der(L); success iff residual
 * < 1e-8. */
SolitonResult ricci_soliton_solve(const LieAlgebra& l, const Eigen::MatrixXd& metric);
/* Least-squares for d tau = lambda phi + Theta(D) phi, Theta the degree-3
 * derivation action; steady iff |lambda| < 1e-8. */
SolitonResult laplacian_soliton_solve(const G2Structure& s);

/* |d(3 tau - coefficient e^{34}) - phi|; coefficient = (tr A1)^{-1}. */
double exactness_residual(const G2Structure& s, double coefficient);

struct NonExactness {
  bool not_exact;         // projection of phi onto d(Lambda^2) misses phi
  double projection_gap;  // |phi - proj_{im d} phi|
  double max_pairing;     // max_{i<j} |<d e^{ij}, e^{347}>|
  double phi_pairing;     // <phi, e^{347}> = 1
};
NonExactness non_exactness_certificate(const G2Structure& s);

struct SU3Restriction {
  Eigen::MatrixXd basis;   // 7 x 6 adapted orthonormal basis of normal^perp
  LieAlgebra hyperplane;   // bracket restricted to that basis
  KForm omega;             // omega' = (-normal) -| phi restricted
  KForm rho_plus;          // phi restricted
  double r_omega2;         // |d(omega' ^ omega')|
  double r_rho;            // |d rho'^+|
  double r_coupled;        // |d omega' - (1/3) rho'^+|
  double r_omega;          // |d omega'|
};
/* Restrict to the hyperplane normal^perp (must be a subalgebra, else throws
 * std::invalid_argument("hyperplane is not a subalgebra")). The co-orientation
 * uses -normal so the coupled equation reads d omega' = +(1/3) rho'^+. */
SU3Restriction su3_restrict(const G2Structure& s, const Eigen::VectorXd& normal,
                            double tol = 1e-9);

} // namespace g2cert
