#pragma once

#include "g2cert/lie_algebra.hpp"
#include "g2cert/model_forms.hpp"

#include <Eigen/Dense>

namespace g2cert {

using Matrix2d = Eigen::Matrix2d;
using Matrix4d = Eigen::Matrix4d;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix7d = Eigen::Matrix<double, 7, 7>;

/* Matrix quadruple mu = (A1, A, B, C) encoding a bracket on
 * g = R e7 + h1 + g1 with h1 = span{e3, e4}, g1 = span{e1, e2, e5, e6}:
 *   [e7, .]|h1 = A1, [e7, .]|g1 = A, [e3, .]|g1 = B, [e4, .]|g1 = C,
 *   [e3, e4] = 0, g1 abelian. Columns convention: [e7, e3] = a e3 + c e4 for
 *   A1 = [[a, b], [c, d]]. A, B, C are traceless. */
struct Quadruple {
  Matrix2d A1 = Matrix2d::Zero();
  Matrix4d A = Matrix4d::Zero();
  Matrix4d B = Matrix4d::Zero();
  Matrix4d C = Matrix4d::Zero();
};

/* Basis order (e7, e3, e4, e1, e2, e5, e6) used for quadruple-facing 7x7
 * matrices (U0 elements, symmetry generators). Conversion to the standard
 * (e1..e7) order: */
Matrix7d quadruple_to_standard(const Matrix7d& m);
Matrix7d standard_to_quadruple(const Matrix7d& m);

LieAlgebra assemble_bracket(const Quadruple& q, const std::string& name);
/* Throws std::invalid_argument when L does not have the quadruple shape
 * (invariant h1, g1, [e3,e4] = 0, abelian g1, traceless A, B, C). */
Quadruple extract_quadruple(const LieAlgebra& l, double tol = 1e-12);

/* Representation of gl(g1) on Lambda^2 g1^*:
 * (theta(E) alpha)(x, y) = -alpha(Ex, y) - alpha(x, Ey), as a 6x6 matrix in
 * the beta basis (columns = images of the basis 2-forms). */
Matrix6d theta(const Matrix4d& e);
/* theta applied to a 2-form on the 4-dim model. */
KForm theta_apply(const Matrix4d& e, const KForm& alpha);

/* The three distinguished traceless symmetric generators:
 * theta(T_i) tau = (1/3) omega_i, |T_i|^2 = 1/9. */
const Matrix4d& t7_matrix();
const Matrix4d& t3_matrix();
const Matrix4d& t4_matrix();

struct MainTheoremResiduals {
  double structural;    // Jacobi block conditions + tracelessness
  double torsion_action; // theta(A) tau = omega7/3, theta(B) tau = omega3/3, theta(C) tau = omega4/3
  double trace_identity; // theta(A) w7 + theta(B) w3 + theta(C) w4 = tau + tr(A1) w7
  double max() const;
};
MainTheoremResiduals check_main_theorem(const Quadruple& q);

/* U0 action: h1 = [[x, y], [-y, x]] on span{e3,e4}; h2, h3 in SO(2) on
 * span{e1,e2}, span{e5,e6}; requires x^2 + y^2 = 1 and h1 h2 h3 = I.
 * mu -> (h1 A1 h1^-1, h4 A h4^-1, h4 (xB - yC) h4^-1, h4 (yB + xC) h4^-1)
 * with h4 = diag(h2, h3). */
Quadruple act_u0(const Quadruple& q, double x, double y, const Matrix2d& h2,
                 const Matrix2d& h3);
Quadruple act_u0_angles(const Quadruple& q, double t, double s);
/* The order-two extra symmetry:
 * mu -> (-g1 A1 g1^-1, -g2 A g2^-1, g2 B g2^-1, -g2 C g2^-1). */
Quadruple act_g(const Quadruple& q);

/* 7x7 matrix (standard basis) of the U0 element with blocks (1, h1, h2, h3). */
Matrix7d u0_matrix(const Matrix2d& h1, const Matrix2d& h2, const Matrix2d& h3);

/* Decomposition of a traceless symmetric 4x4 into the orthogonal pieces
 * sym0(4) = p1 + p2, p2 = span{T7, T3, T4}. */
struct Sym0Parts {
  Matrix4d p1;
  Eigen::Vector3d p2; // coefficients of (T7, T3, T4)
};
Sym0Parts sym0_decompose(const Matrix4d& m, double tol = 1e-12);

/* h preserves phi: |h^* phi - phi| < tol. h in the standard basis. */
bool g2_membership(const Matrix7d& h, double tol = 1e-9, double* residual = nullptr);

} // namespace g2cert
